#include "vofde/postprocess.hpp"

#include <cmath>
#include <stdexcept>

namespace vofde {

namespace {

void check_v(const std::vector<double>& v, const Grid& grid, const char* who) {
    if (static_cast<int>(v.size()) != grid.n + 2)
        throw std::invalid_argument(std::string(who) + ": v must have length N+2");
}

}  // namespace

double weighted_integral_I(const std::vector<double>& v, const Grid& grid) {
    check_v(v, grid, "weighted_integral_I");
    const double h = grid.h;
    double acc = 0.0;
    for (int m = 0; m <= grid.n; ++m) {
        const double w0 = 1.0 - grid.nodes[static_cast<std::size_t>(m)];
        const double w1 = 1.0 - grid.nodes[static_cast<std::size_t>(m) + 1];
        acc += v[static_cast<std::size_t>(m)] * (2.0 * w0 + w1) +
               v[static_cast<std::size_t>(m) + 1] * (w0 + 2.0 * w1);
    }
    return acc * h / 6.0;
}

ReconstructionState reconstruction_state(const std::vector<double>& v,
                                         const Grid& grid) {
    check_v(v, grid, "reconstruction_state");
    ReconstructionState st;
    st.big_i = weighted_integral_I(v, grid);
    st.running_v.resize(static_cast<std::size_t>(grid.n));
    double acc = 0.0;
    for (int n = 0; n < grid.n; ++n) {
        acc += grid.h * (v[static_cast<std::size_t>(n)] +
                         v[static_cast<std::size_t>(n) + 1]) / 2.0;
        st.running_v[static_cast<std::size_t>(n)] = acc;
    }
    return st;
}

std::vector<double> reconstruct_u(const std::vector<double>& v,
                                  const Grid& grid) {
    check_v(v, grid, "reconstruct_u");
    const int n = grid.n;
    const double h = grid.h;
    const double big_i = weighted_integral_I(v, grid);
    std::vector<double> u(static_cast<std::size_t>(n));
    u[0] = h * h * (2.0 * v[0] + v[1]) / 6.0 - h * big_i;
    // running integral of v_h up to x_m, used before its own update
    double vint = h * (v[0] + v[1]) / 2.0;
    for (int m = 1; m < n; ++m) {
        u[static_cast<std::size_t>(m)] =
            u[static_cast<std::size_t>(m) - 1] + h * vint +
            h * h * (2.0 * v[static_cast<std::size_t>(m)] +
                     v[static_cast<std::size_t>(m) + 1]) / 6.0 -
            h * big_i;
        vint += h * (v[static_cast<std::size_t>(m)] +
                     v[static_cast<std::size_t>(m) + 1]) / 2.0;
    }
    return u;
}

double u_h_at(double x, const std::vector<double>& v, const Grid& grid) {
    check_v(v, grid, "u_h_at");
    if (!(x >= 0.0) || !(x <= 1.0))
        throw std::domain_error("u_h_at: x must be in [0,1]");
    const double h = grid.h;
    const double big_i = weighted_integral_I(v, grid);

    // int_0^x v_h(s)(x-s) ds, element by element; Simpson is exact for the
    // elementwise-quadratic integrand.
    double acc = 0.0;
    for (int m = 0; m <= grid.n; ++m) {
        const double a = grid.nodes[static_cast<std::size_t>(m)];
        if (a >= x) break;
        const double b = std::min(grid.nodes[static_cast<std::size_t>(m) + 1], x);
        const double va = v[static_cast<std::size_t>(m)];
        const double vb = v[static_cast<std::size_t>(m) + 1];
        auto vh = [&](double s) {
            return va + (vb - va) * (s - a) / h;
        };
        const double mid = 0.5 * (a + b);
        acc += (b - a) / 6.0 *
               (vh(a) * (x - a) + 4.0 * vh(mid) * (x - mid) + vh(b) * (x - b));
    }
    return acc - x * big_i;
}

Solution make_solution(const Problem& problem, const Grid& grid,
                       const std::vector<double>& v_solver) {
    if (static_cast<int>(v_solver.size()) != grid.n + 1)
        throw std::invalid_argument("make_solution: v must have length N+1");
    Solution sol;
    sol.v.reserve(static_cast<std::size_t>(grid.n) + 2);
    sol.v.push_back(-problem.f(0.0));
    sol.v.insert(sol.v.end(), v_solver.begin(), v_solver.end());
    sol.u = reconstruct_u(sol.v, grid);
    return sol;
}

}  // namespace vofde
