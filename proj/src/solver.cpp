#include "vofde/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <span>
#include <stdexcept>

#include "vofde/errors.hpp"
#include "vofde/threads.hpp"

namespace vofde {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Substitution on a packed triangular block; f/v alias in place.
void substitute_packed(const double* entries, int size, double* v) {
    for (int a = 0; a < size; ++a) {
        const double* row = entries + static_cast<std::size_t>(a) * (a + 1) / 2;
        double acc = 0.0;
        for (int b = 0; b < a; ++b) acc += row[b] * v[b];
        const double diag = row[a];
        if (diag == 0.0)
            throw SingularMatrixError("triangular solve: zero diagonal entry");
        v[a] = (v[a] - acc) / diag;
    }
}

void partition_recurse(int lo, int hi, const ApproxParams& params,
                       FdacPartition& out) {
    const int m = hi - lo;
    if (m <= params.base) {
        out.base_ranges.emplace_back(lo, hi);
        return;
    }
    const int m1 = (m + 1) / 2;
    partition_recurse(lo, lo + m1, params, out);
    out.offdiag.push_back(BlockSpec{lo + m1, hi, lo, lo + m1});
    partition_recurse(lo + m1, hi, params, out);
}

struct FdacContext {
    const Problem& problem;
    const Grid& grid;
    const ApproxParams& params;
    const StructuredTables& tables;
    std::vector<double>& v;  // rhs on input, solution on output (0-based)
};

void fdac_recurse(int lo, int hi, FdacContext& ctx) {
    const int m = hi - lo;
    if (m <= ctx.params.base) {
        const auto block =
            dense_lower_block(ctx.problem, ctx.grid, lo, hi);
        substitute_packed(block.data(), m, ctx.v.data() + (lo - 1));
        return;
    }
    const int m1 = (m + 1) / 2;
    fdac_recurse(lo, lo + m1, ctx);
    const BlockSpec spec{lo + m1, hi, lo, lo + m1};
    const auto y = block_matvec(
        spec, ctx.tables, ctx.params, ctx.problem, ctx.grid,
        std::span<const double>(ctx.v.data() + (lo - 1),
                                static_cast<std::size_t>(m1)));
    double* trailing = ctx.v.data() + (lo + m1 - 1);
    for (int a = 0; a < hi - lo - m1; ++a) trailing[a] -= y[static_cast<std::size_t>(a)];
    fdac_recurse(lo + m1, hi, ctx);
}

}  // namespace

std::vector<double> forward_substitution(const DenseLowerSystem& system) {
    std::vector<double> v = system.rhs;
    substitute_packed(system.entries.data(), system.size, v.data());
    return v;
}

FdacPartition fdac_partition(int system_size, const ApproxParams& params) {
    validate(params);
    if (system_size < 1)
        throw std::invalid_argument("fdac_partition: system_size < 1");
    FdacPartition p;
    partition_recurse(1, system_size + 1, params, p);
    return p;
}

SolveReport fdac_solve(const Problem& problem, const Grid& grid,
                       const ApproxParams& params,
                       const std::vector<double>& rhs) {
    validate(params);
    if (static_cast<int>(rhs.size()) != grid.n + 1)
        throw std::invalid_argument("fdac_solve: rhs must have length N+1");
    SolveReport report;
    report.solver_kind = SolverKind::FDAC;
    report.params_used = params;

    auto t0 = Clock::now();
    const StructuredTables tables = precompute_tables(problem, grid, params);
    report.assembly_seconds = seconds_since(t0);

    t0 = Clock::now();
    report.v = rhs;
    FdacContext ctx{problem, grid, params, tables, report.v};
    fdac_recurse(1, grid.n + 2, ctx);
    report.solve_seconds = seconds_since(t0);
    return report;
}

SolveReport solve(const Problem& problem, const Grid& grid, SolverKind method,
                  std::optional<ApproxParams> params) {
    SolveReport report;
    if (method == SolverKind::FS) {
        if (grid.n > kMaxDenseN)
            throw ResourceError(
                "FS dense path refuses N > " + std::to_string(kMaxDenseN) +
                " (N = " + std::to_string(grid.n) + "); use FDAC instead");
        report.solver_kind = SolverKind::FS;
        auto t0 = Clock::now();
        const DenseLowerSystem system = assemble_dense(problem, grid);
        report.assembly_seconds = seconds_since(t0);
        t0 = Clock::now();
        report.v = forward_substitution(system);
        report.solve_seconds = seconds_since(t0);
        return report;
    }
    const ApproxParams p = params.value_or(ApproxParams::defaults_for(grid.n));
    const std::vector<double> rhs = assemble_rhs(problem, grid);
    return fdac_solve(problem, grid, p, rhs);
}

namespace {

// Start (1-based) of the base diagonal block containing row i.
int base_block_lo(const FdacPartition& part, int i) {
    for (const auto& [lo, hi] : part.base_ranges)
        if (i >= lo && i < hi) return lo;
    throw std::logic_error("base_block_lo: row not covered");
}

}  // namespace

DenseLowerSystem materialize_approx(const Problem& problem, const Grid& grid,
                                    const ApproxParams& params) {
    validate(params);
    const int size = grid.n + 1;
    DenseLowerSystem sys;
    sys.size = size;
    sys.entries = dense_lower_block(problem, grid, 1, size + 1);
    sys.rhs = assemble_rhs(problem, grid);

    const StructuredTables tables = precompute_tables(problem, grid, params);
    const FdacPartition part = fdac_partition(size, params);
    const std::size_t stride = static_cast<std::size_t>(tables.n) + 2;

#pragma omp parallel for schedule(dynamic, 16) num_threads(max_threads())
    for (int i = 1; i <= size; ++i) {
        const int lo = base_block_lo(part, i);
        double* row = sys.row(i);
        const int j_hi = std::min(lo - 1, i - params.band - 1);
        for (int j = 1; j <= j_hi; ++j) {
            const int lag = i - j;
            double acc = 0.0;
            for (int L = 0; L < tables.layers(); ++L) {
                acc += tables.scalings[static_cast<std::size_t>(L) * stride + i] *
                       tables.generators[static_cast<std::size_t>(L) * stride + lag];
            }
            row[j - 1] = acc;
        }
    }
    return sys;
}

namespace {

template <typename PerRow>
double scan_rows(const Problem& problem, const Grid& grid,
                 const ApproxParams& params, int row_stride, PerRow&& per_row) {
    validate(params);
    if (row_stride < 1)
        throw std::invalid_argument("entry error scan: row_stride < 1");
    const int size = grid.n + 1;
    const FdacPartition part = fdac_partition(size, params);
    double worst = 0.0;
    ExceptionCollector errs;
#pragma omp parallel for schedule(dynamic, 4) num_threads(max_threads()) \
    reduction(max : worst)
    for (int i = 1; i <= size; i += row_stride) {
        errs.run([&, i] {
            const int lo = base_block_lo(part, i);
            worst = std::max(worst, per_row(i, lo));
        });
    }
    errs.rethrow();
    return worst;
}

}  // namespace

double max_approx_entry_error(const Problem& problem, const Grid& grid,
                              const ApproxParams& params, int row_stride) {
    const double abar = problem.alpha_bar;
    return scan_rows(
        problem, grid, params, row_stride, [&](int i, int lo) {
            const double alpha_i =
                problem.alpha(grid.nodes[static_cast<std::size_t>(i)]);
            const double scale = row_scale(i, problem, grid);
            double worst = 0.0;
            const int lag_hi = i - 1;  // j = 1
            for (int lag = std::max(params.band + 1, i - lo + 1); lag <= lag_hi;
                 ++lag) {
                const double err =
                    scale * (t_exact(lag, alpha_i) -
                             t_approx(lag, alpha_i, abar, params.s, params.k));
                worst = std::max(worst, std::fabs(err));
            }
            return worst;
        });
}

double approx_entry_error_at_lag(const Problem& problem, const Grid& grid,
                                 const ApproxParams& params, int lag) {
    if (lag <= params.band)
        throw std::invalid_argument(
            "approx_entry_error_at_lag: lag must exceed the exact band");
    const double abar = problem.alpha_bar;
    return scan_rows(problem, grid, params, 1, [&](int i, int lo) {
        if (lag < i - lo + 1 || lag > i - 1) return 0.0;
        const double alpha_i =
            problem.alpha(grid.nodes[static_cast<std::size_t>(i)]);
        const double err =
            row_scale(i, problem, grid) *
            (t_exact(lag, alpha_i) -
             t_approx(lag, alpha_i, abar, params.s, params.k));
        return std::fabs(err);
    });
}

}  // namespace vofde
