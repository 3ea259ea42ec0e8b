#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vofde/model.hpp"
#include "vofde/solver.hpp"

namespace vofde {

// A Problem bundled with its exact solution and (for quadrature-backed
// problems) a per-grid-size preparation hook that tightens tolerances and
// warms value caches. prepare_for returns the RHS quadrature tolerance in
// effect, or 0 when data is closed-form.
struct ExperimentProblem {
    Problem problem;
    RealFn exact_u;
    int id = 0;
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    std::function<double(int)> prepare_for;
};

// d = 1, alpha(x) = (a0-a1)(1 - x - sin(2 pi (1-x))/(2 pi)) + a1,
// exact u = x^4 (1-x), closed-form f.
ExperimentProblem experiment1(double alpha0 = 1.2, double alpha1 = 1.6);

// d = 1, alpha(x) = (a1-a0) x + a0; u and f are defined through the
// weakly singular integrals and evaluated by adaptive graded quadrature
// with per-point caching.
ExperimentProblem experiment2(double alpha0 = 1.2, double alpha1 = 1.6);

// max_{1<=n<=N} |u_exact(x_n) - u_numeric[n-1]|.
double max_nodal_error(const std::vector<double>& u_numeric,
                       const RealFn& u_exact, const Grid& grid);

struct StudyRow {
    long long n = 0;
    std::string solver;
    std::optional<double> error;
    std::optional<double> order;
    std::optional<double> cpu_m;
    std::optional<double> cpu_s;
    std::optional<int> s;
    std::optional<int> k;
    std::optional<int> band;
    std::optional<int> base;
    std::optional<double> quad_tol;   // informational; not serialized
    std::optional<std::string> note;  // set when the row failed
};

const char* solver_name(SolverKind kind);

// Per-grid-size approximation parameters; an empty policy means
// ApproxParams::defaults_for.
using ParamsPolicy = std::function<ApproxParams(int)>;

// One row per grid size: solve, reconstruct, error, order against the
// previous (doubled) size, timing split. A failing row is marked via
// `note` instead of aborting the study.
std::vector<StudyRow> convergence_study(const ExperimentProblem& exp,
                                        SolverKind method,
                                        const std::vector<int>& sizes,
                                        const ParamsPolicy& policy = {});

// Timing rows (no error evaluation). repetitions == 0 selects the default
// policy: median of 3 runs up to n = 4096, single run above. FS rows are
// omitted beyond the dense limit.
std::vector<StudyRow> scaling_benchmark(const ExperimentProblem& exp,
                                        const std::vector<SolverKind>& methods,
                                        const std::vector<int>& sizes,
                                        int repetitions = 0,
                                        const ParamsPolicy& policy = {});

}  // namespace vofde
