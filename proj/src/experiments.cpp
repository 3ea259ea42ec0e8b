#include "vofde/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "vofde/errors.hpp"
#include "vofde/postprocess.hpp"
#include "vofde/quadrature.hpp"
#include "vofde/threads.hpp"

namespace vofde {

namespace {

void check_order_range(double alpha0, double alpha1) {
    if (!(alpha0 >= 1.0) || !(alpha0 < 2.0) || !(alpha1 >= 1.0) ||
        !(alpha1 < 2.0))
        throw std::invalid_argument("experiment: orders must lie in [1,2)");
}

}  // namespace

ExperimentProblem experiment1(double alpha0, double alpha1) {
    check_order_range(alpha0, alpha1);
    auto alpha = [alpha0, alpha1](double x) {
        const double two_pi = 2.0 * M_PI;
        return (alpha0 - alpha1) *
                   (1.0 - x - std::sin(two_pi * (1.0 - x)) / two_pi) +
               alpha1;
    };
    auto f = [alpha](double x) {
        const double a = alpha(x);
        return -(12.0 * x * x - 20.0 * x * x * x) -
               24.0 / gamma_fn(5.0 - a) * pow_or_zero(x, 4.0 - a) +
               120.0 / gamma_fn(6.0 - a) * pow_or_zero(x, 5.0 - a);
    };
    ExperimentProblem exp;
    // the profile is monotone, so the extrema sit at the endpoints
    exp.problem = make_problem(alpha, [](double) { return 1.0; }, f,
                               std::min(alpha0, alpha1),
                               std::max(alpha0, alpha1));
    exp.exact_u = [](double x) { return x * x * x * x * (1.0 - x); };
    exp.id = 1;
    exp.alpha0 = alpha0;
    exp.alpha1 = alpha1;
    return exp;
}

namespace {

// Quadrature-backed data for experiment 2 with per-point caching. Safe to
// call from parallel loops; tolerance tightening clears the caches.
class Exp2Eval {
public:
    Exp2Eval(double alpha0, double alpha1)
        : alpha0_(alpha0), alpha1_(alpha1) {}

    double alpha(double x) const { return (alpha1_ - alpha0_) * x + alpha0_; }

    // Keeps the quadrature error two orders below the expected
    // discretization error; returns the RHS tolerance in effect.
    double tighten_for(double expected_error) {
        constexpr double kFloor = 5e-13;
        const double tu =
            std::max(kFloor, std::min(1e-11, 0.01 * expected_error));
        const double tf =
            std::max(kFloor, std::min(1e-10, 0.01 * expected_error));
        std::lock_guard<std::mutex> lock(mu_);
        if (tu < tol_u_ || tf < tol_f_) {
            tol_u_ = std::min(tol_u_, tu);
            tol_f_ = std::min(tol_f_, tf);
            u_cache_.clear();
            f_cache_.clear();
            c1_valid_ = false;
        }
        return tol_f_;
    }

    double exact_u(double x) {
        if (x <= 0.0 || x >= 1.0) return 0.0;
        auto a = [this](double s) { return alpha(s); };
        return cached(u_cache_, x, [&] {
            return smooth_quad(x, SmoothWeight::XMinusS, a, tol_u_) -
                   x * weighted_moment();
        });
    }

    double rhs_f(double x) {
        if (x <= 0.0) return 0.0;
        auto a = [this](double s) { return alpha(s); };
        return cached(f_cache_, x, [&] {
            const double ax = alpha(x);
            return -std::pow(x, 2.0 - ax) -
                   singular_quad(x, a, ax, tol_f_) / gamma_fn(2.0 - ax);
        });
    }

private:
    double weighted_moment() {
        {
            std::lock_guard<std::mutex> lock(mu_);
            if (c1_valid_) return c1_;
        }
        auto a = [this](double s) { return alpha(s); };
        const double value = smooth_quad(1.0, SmoothWeight::OneMinusS, a, tol_u_);
        std::lock_guard<std::mutex> lock(mu_);
        c1_ = value;
        c1_valid_ = true;
        return c1_;
    }

    template <typename Fn>
    double cached(std::unordered_map<std::uint64_t, double>& cache, double x,
                  Fn&& compute) {
        const std::uint64_t key = std::bit_cast<std::uint64_t>(x);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
        }
        const double value = compute();
        std::lock_guard<std::mutex> lock(mu_);
        cache.emplace(key, value);
        return value;
    }

    double alpha0_;
    double alpha1_;
    double tol_u_ = 1e-11;
    double tol_f_ = 1e-10;
    double c1_ = 0.0;
    bool c1_valid_ = false;
    std::mutex mu_;
    std::unordered_map<std::uint64_t, double> u_cache_;
    std::unordered_map<std::uint64_t, double> f_cache_;
};

}  // namespace

ExperimentProblem experiment2(double alpha0, double alpha1) {
    check_order_range(alpha0, alpha1);
    if (!(alpha0 <= alpha1))
        throw std::invalid_argument("experiment2: requires alpha0 <= alpha1");
    auto eval = std::make_shared<Exp2Eval>(alpha0, alpha1);
    ExperimentProblem exp;
    exp.problem = make_problem(
        [eval](double x) { return eval->alpha(x); },
        [](double) { return 1.0; },
        [eval](double x) { return eval->rhs_f(x); }, alpha0, alpha1);
    exp.exact_u = [eval](double x) { return eval->exact_u(x); };
    exp.id = 2;
    exp.alpha0 = alpha0;
    exp.alpha1 = alpha1;
    const double alpha_max = alpha1;
    exp.prepare_for = [eval, alpha_max](int n) {
        const double expected =
            3e-4 * std::pow(static_cast<double>(n), -(3.0 - alpha_max));
        return eval->tighten_for(expected);
    };
    return exp;
}

double max_nodal_error(const std::vector<double>& u_numeric,
                       const RealFn& u_exact, const Grid& grid) {
    if (static_cast<int>(u_numeric.size()) != grid.n)
        throw std::invalid_argument("max_nodal_error: u must have length N");
    double worst = 0.0;
    ExceptionCollector errs;
#pragma omp parallel for schedule(dynamic, 64) num_threads(max_threads()) \
    reduction(max : worst)
    for (int n = 1; n <= grid.n; ++n) {
        errs.run([&, n] {
            const double diff =
                std::fabs(u_exact(grid.nodes[static_cast<std::size_t>(n)]) -
                          u_numeric[static_cast<std::size_t>(n - 1)]);
            worst = std::max(worst, diff);
        });
    }
    errs.rethrow();
    return worst;
}

const char* solver_name(SolverKind kind) {
    return kind == SolverKind::FS ? "fs" : "fdac";
}

namespace {

void fill_params(StudyRow& row, const SolveReport& report) {
    if (report.params_used) {
        row.s = report.params_used->s;
        row.k = report.params_used->k;
        row.band = report.params_used->band;
        row.base = report.params_used->base;
    }
}

}  // namespace

std::vector<StudyRow> convergence_study(const ExperimentProblem& exp,
                                        SolverKind method,
                                        const std::vector<int>& sizes,
                                        const ParamsPolicy& policy) {
    std::vector<StudyRow> rows;
    std::optional<double> prev_error;
    long long prev_n = 0;
    for (int n : sizes) {
        StudyRow row;
        row.n = n;
        row.solver = solver_name(method);
        try {
            if (exp.prepare_for) row.quad_tol = exp.prepare_for(n);
            const Grid grid = make_grid(n);
            // warm the RHS cache so quadrature cost stays out of CPU_M
            assemble_rhs(exp.problem, grid);
            std::optional<ApproxParams> params;
            if (method == SolverKind::FDAC && policy) params = policy(n);
            const SolveReport report = solve(exp.problem, grid, method, params);
            row.cpu_m = report.assembly_seconds;
            row.cpu_s = report.solve_seconds;
            fill_params(row, report);
            const Solution sol = make_solution(exp.problem, grid, report.v);
            const double err = max_nodal_error(sol.u, exp.exact_u, grid);
            row.error = err;
            if (prev_error && prev_n * 2 == n && err > 0.0)
                row.order = std::log2(*prev_error / err);
            prev_error = err;
            prev_n = n;
        } catch (const std::exception& e) {
            row.note = e.what();
            prev_error.reset();
            prev_n = 0;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<StudyRow> scaling_benchmark(const ExperimentProblem& exp,
                                        const std::vector<SolverKind>& methods,
                                        const std::vector<int>& sizes,
                                        int repetitions,
                                        const ParamsPolicy& policy) {
    if (repetitions < 0)
        throw std::invalid_argument("scaling_benchmark: repetitions < 0");
    std::vector<StudyRow> rows;
    for (int n : sizes) {
        if (exp.prepare_for) exp.prepare_for(n);
        const Grid grid = make_grid(n);
        assemble_rhs(exp.problem, grid);  // warm quadrature caches once
        for (SolverKind method : methods) {
            if (method == SolverKind::FS && n > kMaxDenseN) continue;
            StudyRow row;
            row.n = n;
            row.solver = solver_name(method);
            const int reps =
                repetitions > 0 ? repetitions : (n <= 4096 ? 3 : 1);
            try {
                std::optional<ApproxParams> params;
                if (method == SolverKind::FDAC && policy) params = policy(n);
                std::vector<double> am, sm;
                SolveReport last;
                for (int r = 0; r < reps; ++r) {
                    last = solve(exp.problem, grid, method, params);
                    am.push_back(last.assembly_seconds);
                    sm.push_back(last.solve_seconds);
                }
                std::sort(am.begin(), am.end());
                std::sort(sm.begin(), sm.end());
                row.cpu_m = am[static_cast<std::size_t>((reps - 1) / 2)];
                row.cpu_s = sm[static_cast<std::size_t>((reps - 1) / 2)];
                fill_params(row, last);
            } catch (const std::exception& e) {
                row.note = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

}  // namespace vofde
