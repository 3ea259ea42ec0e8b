#pragma once

#include <vector>

#include "vofde/model.hpp"

namespace vofde {

namespace quad {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights by Newton iteration; cached per order.
const GaussRule& legendre_rule(int order);

// Endpoint description for graded_integrate: the integrand behaves like
// smooth(s) * dist^exponent near that endpoint (dist = distance to the
// endpoint). exponent == 0 means no algebraic kernel there; smooth may then
// be empty.
struct Endpoint {
    double exponent = 0.0;
    RealFn smooth;
};

struct Options {
    double ratio = 2.0;    // geometric grading ratio
    int panel_points = 16;
    int max_levels = 40;
    int min_levels = 6;
};

// Composite Gauss-Legendre on meshes geometrically graded toward both
// endpoints, refined until two successive grading depths agree within tol.
// The innermost panel at an endpoint with a nonzero kernel exponent is
// integrated by a product rule with the smooth factor linearized, so the
// algebraic singularity never meets the polynomial rule. Throws
// NumericalAccuracyError when the budget is exhausted.
double graded_integrate(const RealFn& f, double a, double b,
                        const Endpoint& left, const Endpoint& right,
                        double tol, const Options& opts = {});

}  // namespace quad

// int_0^x s^{2-alpha(s)} (x-s)^{1-alpha_x} ds with alpha_x = alpha(x);
// graded toward both endpoints. Requires 1 - alpha_x in (-1, 0].
double singular_quad(double x, const RealFn& alpha, double alpha_x, double tol,
                     const quad::Options& opts = {});

enum class SmoothWeight { XMinusS, OneMinusS };

// int_0^x s^{2-alpha(s)} (x-s) ds  or  int_0^1 s^{2-alpha(s)} (1-s) ds,
// graded toward s = 0 only.
double smooth_quad(double x, SmoothWeight weight, const RealFn& alpha,
                   double tol, const quad::Options& opts = {});

}  // namespace vofde
