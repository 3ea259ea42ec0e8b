#include "vofde/assembly.hpp"

#include <cmath>
#include <new>
#include <stdexcept>

#include "vofde/errors.hpp"
#include "vofde/threads.hpp"

namespace vofde {

double t_exact(int lag, double alpha_i) {
    if (lag < 1) throw std::invalid_argument("t_exact: lag must be >= 1");
    const double e = 3.0 - alpha_i;
    return (pow_or_zero(lag - 1, e) - 2.0 * pow_or_zero(lag, e)) +
           pow_or_zero(lag + 1, e);
}

double row_scale(int i, const Problem& problem, const Grid& grid) {
    const double x = grid.nodes[static_cast<std::size_t>(i)];
    const double a = problem.alpha(x);
    return problem.d(x) * std::pow(grid.h, 2.0 - a) / gamma_fn(4.0 - a);
}

double exact_entry(int i, int j, const Problem& problem, const Grid& grid) {
    if (j > i || j < 1 || i > grid.n + 1)
        throw std::invalid_argument("exact_entry: need 1 <= j <= i <= N+1");
    const double scale = row_scale(i, problem, grid);
    if (i == j) return 1.0 + scale;
    const double a = problem.alpha(grid.nodes[static_cast<std::size_t>(i)]);
    return scale * t_exact(i - j, a);
}

std::vector<double> assemble_rhs(const Problem& problem, const Grid& grid) {
    const int size = grid.n + 1;
    std::vector<double> rhs(static_cast<std::size_t>(size));
    const double v0 = -problem.f(0.0);
    const double h = grid.h;
    const double x1 = grid.nodes[1];
    ExceptionCollector errs;
#pragma omp parallel for schedule(dynamic, 64) num_threads(max_threads())
    for (int n = 1; n <= size; ++n) {
        errs.run([&, n] {
            const double x = grid.nodes[static_cast<std::size_t>(n)];
            double value = -problem.f(x);
            if (v0 != 0.0) {
                const double a = problem.alpha(x);
                const double correction =
                    pow_or_zero(x, 2.0 - a) / gamma_fn(3.0 - a) +
                    (pow_or_zero(x - x1, 3.0 - a) - pow_or_zero(x, 3.0 - a)) /
                        (h * gamma_fn(4.0 - a));
                value -= problem.d(x) * v0 * correction;
            }
            rhs[static_cast<std::size_t>(n - 1)] = value;
        });
    }
    errs.rethrow();
    return rhs;
}

namespace {

// Fills the packed rows [lo, hi). Powers m^{3-alpha_i} are tabulated once
// per row; the combination below must stay expression-identical to t_exact
// so entries are bit-identical to exact_entry.
void fill_block_rows(const Problem& problem, const Grid& grid, int lo, int hi,
                     double* out, bool parallel) {
    const int rows = hi - lo;
    ExceptionCollector errs;
#pragma omp parallel if (parallel && rows > 128) num_threads(max_threads())
    {
        std::vector<double> pw;
#pragma omp for schedule(dynamic, 16)
        for (int a = 0; a < rows; ++a) {
            errs.run([&, a] {
                const int i = lo + a;
                const double x = grid.nodes[static_cast<std::size_t>(i)];
                const double alpha_i = problem.alpha(x);
                const double e = 3.0 - alpha_i;
                const double scale = row_scale(i, problem, grid);
                pw.resize(static_cast<std::size_t>(a) + 2);
                for (int m = 0; m <= a + 1; ++m)
                    pw[static_cast<std::size_t>(m)] = pow_or_zero(m, e);
                double* row = out + static_cast<std::size_t>(a) * (a + 1) / 2;
                for (int b = 0; b < a; ++b) {
                    const int lag = a - b;
                    const double t = (pw[static_cast<std::size_t>(lag - 1)] -
                                      2.0 * pw[static_cast<std::size_t>(lag)]) +
                                     pw[static_cast<std::size_t>(lag + 1)];
                    row[b] = scale * t;
                }
                row[a] = 1.0 + scale;
            });
        }
    }
    errs.rethrow();
}

std::vector<double> make_block(const Problem& problem, const Grid& grid, int lo,
                               int hi, bool parallel) {
    if (lo < 1 || hi <= lo || hi > grid.n + 2)
        throw std::invalid_argument("dense_lower_block: bad range");
    const int rows = hi - lo;
    std::vector<double> entries;
    try {
        entries.resize(static_cast<std::size_t>(rows) * (rows + 1) / 2);
    } catch (const std::bad_alloc&) {
        throw ResourceError("dense_lower_block: allocation failed for " +
                            std::to_string(rows) + " rows");
    }
    fill_block_rows(problem, grid, lo, hi, entries.data(), parallel);
    return entries;
}

}  // namespace

std::vector<double> dense_lower_block(const Problem& problem, const Grid& grid,
                                      int lo, int hi) {
    return make_block(problem, grid, lo, hi, true);
}

std::vector<double> dense_lower_block_serial(const Problem& problem,
                                             const Grid& grid, int lo, int hi) {
    return make_block(problem, grid, lo, hi, false);
}

DenseLowerSystem assemble_dense(const Problem& problem, const Grid& grid) {
    DenseLowerSystem sys;
    sys.size = grid.n + 1;
    sys.entries = dense_lower_block(problem, grid, 1, grid.n + 2);
    sys.rhs = assemble_rhs(problem, grid);
    return sys;
}

DenseLowerSystem assemble_dense_serial(const Problem& problem,
                                       const Grid& grid) {
    DenseLowerSystem sys;
    sys.size = grid.n + 1;
    sys.entries = dense_lower_block_serial(problem, grid, 1, grid.n + 2);
    sys.rhs = assemble_rhs(problem, grid);
    return sys;
}

}  // namespace vofde
