#pragma once

#include <vector>

#include "vofde/model.hpp"

namespace vofde {

// I = int_0^1 v_h(s)(1-s) ds and the running trapezoid integrals
// running_v[n] = int_0^{x_{n+1}} v_h(s) ds for n = 0..N-1.
struct ReconstructionState {
    double big_i = 0.0;
    std::vector<double> running_v;
};

// Exact elementwise integral of the piecewise-linear v_h against (1-s);
// v has length N+2.
double weighted_integral_I(const std::vector<double>& v, const Grid& grid);

ReconstructionState reconstruction_state(const std::vector<double>& v,
                                         const Grid& grid);

// u_1..u_N from the O(N) recurrence
//   u_1 = h^2 (2 v_0 + v_1)/6 - h I,
//   u_{n+1} = u_n + h * int_0^{x_n} v_h + h^2 (2 v_n + v_{n+1})/6 - h I.
std::vector<double> reconstruct_u(const std::vector<double>& v,
                                  const Grid& grid);

// Direct evaluation of u_h(x) = int_0^x v_h(s)(x-s) ds - x I for x in [0,1];
// exact per element (the integrand is elementwise quadratic).
double u_h_at(double x, const std::vector<double>& v, const Grid& grid);

// Full v (with v_0 = -f(0) prepended) and reconstructed u from solver output.
Solution make_solution(const Problem& problem, const Grid& grid,
                       const std::vector<double>& v_solver);

}  // namespace vofde
