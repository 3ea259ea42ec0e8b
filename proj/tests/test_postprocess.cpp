#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vofde/postprocess.hpp"

using namespace vofde;

namespace {

std::vector<double> random_v(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(n) + 2);
    for (auto& x : v) x = dist(rng);
    return v;
}

// direct evaluation of u_h(x_n) = int_0^{x_n} v_h (x_n - s) ds - x_n I by
// exact elementwise quadrature (two-point Gauss per element is exact for the
// quadratic integrand); independent of the recurrence under test
double direct_u(const std::vector<double>& v, const Grid& g, int n) {
    const double x = g.nodes[static_cast<std::size_t>(n)];
    const double h = g.h;
    long double acc = 0.0L;
    const long double r = 1.0L / std::sqrt(3.0L);
    for (int m = 0; m < n; ++m) {
        const long double a = g.nodes[static_cast<std::size_t>(m)];
        const long double c = a + h / 2.0L;
        for (long double node : {c - r * h / 2.0L, c + r * h / 2.0L}) {
            const long double vh =
                v[static_cast<std::size_t>(m)] +
                (v[static_cast<std::size_t>(m) + 1] - v[static_cast<std::size_t>(m)]) *
                    (node - a) / h;
            acc += (h / 2.0L) * vh * (x - node);
        }
    }
    long double big_i = 0.0L;
    for (int m = 0; m <= g.n; ++m) {
        const long double a = g.nodes[static_cast<std::size_t>(m)];
        const long double c = a + h / 2.0L;
        for (long double node : {c - r * h / 2.0L, c + r * h / 2.0L}) {
            const long double vh =
                v[static_cast<std::size_t>(m)] +
                (v[static_cast<std::size_t>(m) + 1] - v[static_cast<std::size_t>(m)]) *
                    (node - a) / h;
            big_i += (h / 2.0L) * vh * (1.0L - node);
        }
    }
    return static_cast<double>(acc - x * big_i);
}

}  // namespace

TEST_CASE("weighted_integral_I closed forms") {
    Grid g = make_grid(9);
    std::vector<double> ones(11, 1.0);
    CHECK(weighted_integral_I(ones, g) == doctest::Approx(0.5).epsilon(1e-15));

    std::vector<double> linear(11);
    for (int m = 0; m <= 10; ++m) linear[m] = g.nodes[m];
    CHECK(weighted_integral_I(linear, g) ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-14));

    CHECK_THROWS_AS(weighted_integral_I(ones, make_grid(3)),
                    std::invalid_argument);
}

TEST_CASE("weighted_integral_I matches a fine Simpson refinement") {
    Grid g = make_grid(7);
    auto v = random_v(7, 41);
    auto vh = [&](double s) {
        const int m = std::min(static_cast<int>(s / g.h), g.n);
        return v[m] + (v[m + 1] - v[m]) * (s - g.nodes[m]) / g.h;
    };
    const int panels = 10000;
    long double acc = 0.0L;
    const double w = 1.0 / panels;
    for (int i = 0; i < panels; ++i) {
        const double a = i * w, b = a + w, c = a + w / 2;
        acc += (w / 6.0L) * (vh(a) * (1 - a) + 4.0L * vh(c) * (1 - c) +
                             vh(b) * (1 - b));
    }
    CHECK(weighted_integral_I(v, g) ==
          doctest::Approx(static_cast<double>(acc)).epsilon(1e-12));
}

TEST_CASE("reconstruction_state holds the trapezoid prefix sums") {
    Grid g = make_grid(6);
    auto v = random_v(6, 17);
    ReconstructionState st = reconstruction_state(v, g);
    REQUIRE(static_cast<int>(st.running_v.size()) == 6);
    CHECK(st.running_v[0] ==
          doctest::Approx(g.h * (v[0] + v[1]) / 2).epsilon(1e-15));
    for (int n = 1; n < 6; ++n)
        CHECK(st.running_v[n] ==
              doctest::Approx(st.running_v[n - 1] +
                              g.h * (v[n] + v[n + 1]) / 2).epsilon(1e-14));
    CHECK(st.big_i == doctest::Approx(weighted_integral_I(v, g)).epsilon(1e-15));
}

TEST_CASE("reconstruct_u of zero and constant v") {
    Grid g = make_grid(15);
    std::vector<double> zeros(17, 0.0);
    for (double u : reconstruct_u(zeros, g)) CHECK(u == 0.0);

    // v == 1 integrates to u(x) = x(x-1)/2 exactly
    std::vector<double> ones(17, 1.0);
    auto u = reconstruct_u(ones, g);
    for (int n = 1; n <= 15; ++n) {
        const double x = g.nodes[n];
        CHECK(std::fabs(u[n - 1] - x * (x - 1.0) / 2.0) <= 1e-13);
    }
}

TEST_CASE("reconstruct_u equals the direct integral formula") {
    Grid g = make_grid(15);
    auto v = random_v(15, 3);
    auto u = reconstruct_u(v, g);
    for (int n = 1; n <= 15; ++n)
        CHECK(std::fabs(u[n - 1] - direct_u(v, g, n)) <= 1e-12);
}

TEST_CASE("nodal consistency of u_h_at across sizes") {
    for (int n : {7, 31, 100}) {
        Grid g = make_grid(n);
        auto v = random_v(n, 1000 + n);
        auto u = reconstruct_u(v, g);
        for (int m = 1; m <= n; ++m)
            CHECK(std::fabs(u_h_at(g.nodes[m], v, g) - u[m - 1]) <= 1e-12);
    }
}

TEST_CASE("u_h_at boundary exactness and hand value") {
    Grid g = make_grid(31);
    auto v = random_v(31, 77);
    CHECK(u_h_at(0.0, v, g) == 0.0);
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::fabs(x));
    CHECK(std::fabs(u_h_at(1.0, v, g)) <= 1e-13 * std::max(vmax, 1.0));

    std::vector<double> ones(33, 1.0);
    CHECK(u_h_at(0.3, ones, g) ==
          doctest::Approx(0.3 * 0.3 / 2.0 - 0.3 * 0.5).epsilon(1e-13));

    CHECK_THROWS_AS(u_h_at(-0.1, v, g), std::domain_error);
    CHECK_THROWS_AS(u_h_at(1.1, v, g), std::domain_error);
}

TEST_CASE("reconstruct_u is linear in v") {
    Grid g = make_grid(23);
    auto v = random_v(23, 5);
    auto w = random_v(23, 6);
    const double a = 1.7, b = -0.4;
    std::vector<double> combo(25);
    for (int i = 0; i < 25; ++i) combo[i] = a * v[i] + b * w[i];
    auto uc = reconstruct_u(combo, g);
    auto uv = reconstruct_u(v, g);
    auto uw = reconstruct_u(w, g);
    for (int i = 0; i < 23; ++i) {
        const double expect = a * uv[i] + b * uw[i];
        CHECK(std::fabs(uc[i] - expect) <=
              1e-12 * std::max(1.0, std::fabs(expect)));
    }
}

TEST_CASE("make_solution prepends v0 = -f(0)") {
    Grid g = make_grid(3);
    Problem p = make_problem([](double) { return 1.5; },
                             [](double) { return 0.0; },
                             [](double x) { return 2.0 + x; }, 1.5, 1.5);
    std::vector<double> v_solver{1.0, 2.0, 3.0, 4.0};
    Solution sol = make_solution(p, g, v_solver);
    REQUIRE(sol.v.size() == 5);
    CHECK(sol.v[0] == -2.0);
    CHECK(sol.v[1] == 1.0);
    REQUIRE(sol.u.size() == 3);
}
