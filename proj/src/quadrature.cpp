#include "vofde/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "vofde/errors.hpp"

namespace vofde {

namespace quad {

namespace {

GaussRule compute_rule(int order) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(order));
    rule.weights.resize(static_cast<std::size_t>(order));
    const int m = (order + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
            }
            pp = order * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = -z;
        rule.nodes[static_cast<std::size_t>(order - 1 - i)] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& legendre_rule(int order) {
    if (order < 1) throw std::invalid_argument("legendre_rule: order < 1");
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, std::make_shared<const GaussRule>(
                                      compute_rule(order))).first;
    return *it->second;
}

namespace {

double panel_gl(const RealFn& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

// int_0^w (g0 + (g1-g0) t/w) t^beta dt, linearized smooth factor against the
// exact kernel; g0 is the smooth factor at the endpoint itself.
double product_panel(double g0, double g1, double w, double beta) {
    return std::pow(w, 1.0 + beta) *
           (g0 / (1.0 + beta) + (g1 - g0) / (2.0 + beta));
}

// One half-interval graded toward `corner`, integrated in the distance
// variable t = |s - corner| so the same code serves both ends.
double half_integral(const RealFn& f, double corner, double far,
                     const Endpoint& end, int levels, double ratio,
                     const GaussRule& rule) {
    const double sgn = far >= corner ? 1.0 : -1.0;
    const double span = std::fabs(far - corner);
    auto g = [&](double t) { return f(corner + sgn * t); };
    double acc = 0.0;
    double inner = span * std::pow(ratio, -static_cast<double>(levels));
    if (end.exponent != 0.0) {
        const double g0 = end.smooth(corner);
        const double g1 = end.smooth(corner + sgn * inner);
        acc += product_panel(g0, g1, inner, end.exponent);
    } else {
        acc += panel_gl(g, 0.0, inner, rule);
    }
    for (int j = 0; j < levels; ++j) {
        const double outer = j + 1 == levels ? span : inner * ratio;
        acc += panel_gl(g, inner, outer, rule);
        inner = outer;
    }
    return acc;
}

double whole_integral(const RealFn& f, double a, double b,
                      const Endpoint& left, const Endpoint& right, int levels,
                      const Options& opts) {
    const GaussRule& rule = legendre_rule(opts.panel_points);
    const double mid = 0.5 * (a + b);
    return half_integral(f, a, mid, left, levels, opts.ratio, rule) +
           half_integral(f, b, mid, right, levels, opts.ratio, rule);
}

}  // namespace

double graded_integrate(const RealFn& f, double a, double b,
                        const Endpoint& left, const Endpoint& right,
                        double tol, const Options& opts) {
    if (!(tol > 0.0)) throw std::invalid_argument("graded_integrate: tol <= 0");
    if (!(b > a)) {
        if (b == a) return 0.0;
        throw std::invalid_argument("graded_integrate: b < a");
    }
    double prev = whole_integral(f, a, b, left, right, opts.min_levels, opts);
    double best = prev;
    double achieved = std::numeric_limits<double>::infinity();
    for (int levels = opts.min_levels + 1; levels <= opts.max_levels; ++levels) {
        const double cur = whole_integral(f, a, b, left, right, levels, opts);
        achieved = std::fabs(cur - prev);
        best = cur;
        if (achieved <= tol) return cur;
        prev = cur;
    }
    throw NumericalAccuracyError(
        "graded_integrate: tolerance " + std::to_string(tol) +
            " not reached within " + std::to_string(opts.max_levels) +
            " grading levels",
        best, achieved);
}

}  // namespace quad

double singular_quad(double x, const RealFn& alpha, double alpha_x, double tol,
                     const quad::Options& opts) {
    if (!(x > 0.0) || !(x <= 1.0))
        throw std::invalid_argument("singular_quad: x must be in (0,1]");
    const double beta_right = 1.0 - alpha_x;
    if (!(beta_right > -1.0) || !(beta_right <= 0.0))
        throw std::invalid_argument("singular_quad: 1-alpha(x) outside (-1,0]");
    const double alpha0 = alpha(0.0);
    const double beta_left = 2.0 - alpha0;

    auto integrand = [&, x](double s) {
        return pow_or_zero(s, 2.0 - alpha(s)) *
               pow_or_zero(x - s, beta_right);
    };
    quad::Endpoint left{beta_left, [&, x](double s) {
                            // s^{2-alpha(s)} factored as s^{beta_left} * rest
                            return std::pow(s, alpha0 - alpha(s)) *
                                   pow_or_zero(x - s, beta_right);
                        }};
    quad::Endpoint right{beta_right, [&](double s) {
                             return pow_or_zero(s, 2.0 - alpha(s));
                         }};
    // beta_right == 0 happens when alpha(x) == 1: no kernel at s = x.
    if (beta_right == 0.0) right = quad::Endpoint{};
    return quad::graded_integrate(integrand, 0.0, x, left, right, tol, opts);
}

double smooth_quad(double x, SmoothWeight weight, const RealFn& alpha,
                   double tol, const quad::Options& opts) {
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::invalid_argument("smooth_quad: x must be in [0,1]");
    const double upper = weight == SmoothWeight::OneMinusS ? 1.0 : x;
    if (upper == 0.0) return 0.0;
    auto w = [weight, x](double s) {
        return weight == SmoothWeight::OneMinusS ? 1.0 - s : x - s;
    };
    const double alpha0 = alpha(0.0);
    auto integrand = [&](double s) {
        return pow_or_zero(s, 2.0 - alpha(s)) * w(s);
    };
    quad::Endpoint left{2.0 - alpha0, [&](double s) {
                            return std::pow(s, alpha0 - alpha(s)) * w(s);
                        }};
    return quad::graded_integrate(integrand, 0.0, upper, left, quad::Endpoint{},
                                  tol, opts);
}

}  // namespace vofde
