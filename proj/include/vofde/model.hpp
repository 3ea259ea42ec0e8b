#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace vofde {

using RealFn = std::function<double(double)>;

// x^e with the 0^positive = 0 convention.
inline double pow_or_zero(double x, double e) {
    return x > 0.0 ? std::pow(x, e) : 0.0;
}

// Continuous problem data: -u'' - d(x) * D^{alpha(x)} u = f(x) on (0,1),
// u(0) = u(1) = 0, with 1 <= alpha_min <= alpha(x) <= alpha_max < 2 and
// d(x) >= 0.
struct Problem {
    RealFn alpha;
    RealFn d;
    RealFn f;
    double alpha_min = 1.0;
    double alpha_max = 1.0;
    double alpha_bar = 1.0;  // (alpha_min + alpha_max) / 2
};

// Constructs a Problem with known order extrema. Throws std::invalid_argument
// unless 1 <= alpha_min <= alpha_max < 2.
Problem make_problem(RealFn alpha, RealFn d, RealFn f, double alpha_min,
                     double alpha_max);

// Fallback when closed-form extrema are unknown: samples alpha at `samples`
// uniform points and takes the observed extrema. The resulting alpha_min /
// alpha_max are approximate.
Problem make_problem_sampled(RealFn alpha, RealFn d, RealFn f,
                             int samples = 10000);

// Uniform partition of [0,1]: nodes x_m = m*h for m = 0..n+1, h = 1/(n+1).
struct Grid {
    int n = 0;
    double h = 0.0;
    std::vector<double> nodes;
};

Grid make_grid(int n);

// Tuning knobs of the structured approximation and the recursive solver.
struct ApproxParams {
    int s = 0;     // highest power kept in the log expansion
    int k = 1;     // number of even binomial terms kept
    int band = 1;  // lags <= band are evaluated exactly
    int base = 1;  // blocks of size <= base are solved directly

    // k = 2, s = ceil((e/2) ln n), band = ceil(ln n), base = max(64, band).
    static ApproxParams defaults_for(int n);
};

void validate(const ApproxParams& p);

// Collocation unknowns (v = u'' proxy, nodes 0..N+1) and the reconstructed
// solution values at the interior nodes 1..N.
struct Solution {
    std::vector<double> v;
    std::vector<double> u;
};

// Gamma function for x > 0; relative accuracy ~1e-14 on the arguments that
// arise here (x in (0, 6]). Throws std::domain_error for x <= 0.
double gamma_fn(double x);

// Generalized binomial coefficient: product_{r=0}^{m-1} (a - r) / m!,
// with the empty product equal to 1.
double binom_real(double a, int m);

}  // namespace vofde
