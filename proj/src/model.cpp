#include "vofde/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace vofde {

Problem make_problem(RealFn alpha, RealFn d, RealFn f, double alpha_min,
                     double alpha_max) {
    if (!(alpha_min >= 1.0) || !(alpha_min <= alpha_max) || !(alpha_max < 2.0))
        throw std::invalid_argument(
            "make_problem: need 1 <= alpha_min <= alpha_max < 2");
    Problem p;
    p.alpha = std::move(alpha);
    p.d = std::move(d);
    p.f = std::move(f);
    p.alpha_min = alpha_min;
    p.alpha_max = alpha_max;
    p.alpha_bar = (alpha_min + alpha_max) / 2.0;
    return p;
}

Problem make_problem_sampled(RealFn alpha, RealFn d, RealFn f, int samples) {
    if (samples < 2) throw std::invalid_argument("make_problem_sampled: samples < 2");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        double a = alpha(static_cast<double>(i) / samples);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return make_problem(std::move(alpha), std::move(d), std::move(f), lo, hi);
}

Grid make_grid(int n) {
    if (n < 1) throw std::invalid_argument("make_grid: n must be >= 1");
    Grid g;
    g.n = n;
    g.h = 1.0 / (n + 1);
    g.nodes.resize(static_cast<std::size_t>(n) + 2);
    for (int m = 0; m <= n + 1; ++m)
        g.nodes[static_cast<std::size_t>(m)] = static_cast<double>(m) / (n + 1);
    return g;
}

ApproxParams ApproxParams::defaults_for(int n) {
    if (n < 1) throw std::invalid_argument("ApproxParams::defaults_for: n < 1");
    const double ln_n = std::log(static_cast<double>(n));
    ApproxParams p;
    p.k = 2;
    p.s = static_cast<int>(std::ceil(0.5 * std::exp(1.0) * ln_n));
    p.band = std::max(1, static_cast<int>(std::ceil(ln_n)));
    p.base = std::max(64, p.band);
    return p;
}

void validate(const ApproxParams& p) {
    if (p.s < 0 || p.k < 1 || p.band < 1 || p.base < 1)
        throw std::invalid_argument(
            "ApproxParams: need s >= 0, k >= 1, band >= 1, base >= 1");
}

namespace {

// Lanczos approximation, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_fn: requires x > 0");
    if (x < 0.5) return lanczos_gamma(x + 1.0) / x;
    return lanczos_gamma(x);
}

double binom_real(double a, int m) {
    if (m < 0) throw std::invalid_argument("binom_real: m must be >= 0");
    double result = 1.0;
    for (int r = 0; r < m; ++r) result *= (a - r) / (r + 1);
    return result;
}

}  // namespace vofde
