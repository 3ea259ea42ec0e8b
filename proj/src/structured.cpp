#include "vofde/structured.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vofde/fft.hpp"
#include "vofde/threads.hpp"

namespace vofde {

StructuredTables precompute_tables(const Problem& problem, const Grid& grid,
                                   const ApproxParams& params) {
    validate(params);
    StructuredTables t;
    t.n = grid.n;
    t.s = params.s;
    t.k = params.k;
    t.alpha_bar = problem.alpha_bar;
    const std::size_t stride = static_cast<std::size_t>(t.n) + 2;
    t.generators.assign(static_cast<std::size_t>(t.layers()) * stride, 0.0);
    t.scalings.assign(static_cast<std::size_t>(t.layers()) * stride, 0.0);

    std::vector<double> ln_m(stride, 0.0);
#pragma omp parallel for schedule(static) num_threads(max_threads())
    for (int m = 1; m <= t.n + 1; ++m)
        ln_m[static_cast<std::size_t>(m)] = std::log(static_cast<double>(m));

    for (int q = 1; q <= t.k; ++q) {
        double* layer0 = t.generators.data() +
                         static_cast<std::size_t>(t.layer(0, q)) * stride;
#pragma omp parallel for schedule(static) num_threads(max_threads())
        for (int m = 1; m <= t.n + 1; ++m)
            layer0[m] = std::pow(static_cast<double>(m),
                                 3.0 - t.alpha_bar - 2.0 * q);
        for (int p = 1; p <= t.s; ++p) {
            const double* prev = t.generators.data() +
                                 static_cast<std::size_t>(t.layer(p - 1, q)) * stride;
            double* cur = t.generators.data() +
                          static_cast<std::size_t>(t.layer(p, q)) * stride;
#pragma omp parallel for schedule(static) num_threads(max_threads())
            for (int m = 1; m <= t.n + 1; ++m) cur[m] = prev[m] * ln_m[m];
        }
    }

    ExceptionCollector errs;
#pragma omp parallel for schedule(dynamic, 64) num_threads(max_threads())
    for (int i = 1; i <= t.n + 1; ++i) {
        errs.run([&, i] {
            const double x = grid.nodes[static_cast<std::size_t>(i)];
            const double a_i = problem.alpha(x);
            const double common = 2.0 * row_scale(i, problem, grid);
            const double delta = t.alpha_bar - a_i;
            double pref = 1.0;  // delta^p / p!
            for (int p = 0; p <= t.s; ++p) {
                if (p > 0) pref *= delta / p;
                for (int q = 1; q <= t.k; ++q) {
                    t.scalings[static_cast<std::size_t>(t.layer(p, q)) * stride + i] =
                        common * pref * binom_real(3.0 - a_i, 2 * q);
                }
            }
        });
    }
    errs.rethrow();

    t.layer_max_scaling.assign(static_cast<std::size_t>(t.layers()), 0.0);
    for (int L = 0; L < t.layers(); ++L) {
        double mx = 0.0;
        const double* row = t.scalings.data() + static_cast<std::size_t>(L) * stride;
        for (int i = 1; i <= t.n + 1; ++i) mx = std::max(mx, std::fabs(row[i]));
        t.layer_max_scaling[static_cast<std::size_t>(L)] = mx;
    }
    return t;
}

double t_approx(int lag, double alpha_i, double alpha_bar, int s, int k) {
    if (lag < 1) throw std::invalid_argument("t_approx: lag must be >= 1");
    const double ln_lag = std::log(static_cast<double>(lag));
    const double delta = alpha_bar - alpha_i;
    double log_sum = 1.0;
    double term = 1.0;
    for (int p = 1; p <= s; ++p) {
        term *= delta * ln_lag / p;
        log_sum += term;
    }
    const double a = 3.0 - alpha_i;
    const double inv_lag2 = 1.0 / (static_cast<double>(lag) * lag);
    double binom_sum = 0.0;
    double binom = 1.0;
    double lag_pow = 1.0;
    for (int q = 1; q <= k; ++q) {
        // binom(a, 2q) from binom(a, 2q-2)
        binom *= (a - (2 * q - 2)) / (2 * q - 1) * (a - (2 * q - 1)) / (2 * q);
        lag_pow *= inv_lag2;
        binom_sum += binom * lag_pow;
    }
    return 2.0 * std::pow(static_cast<double>(lag), 3.0 - alpha_bar) * log_sum *
           binom_sum;
}

double truncation_surrogate(int lag, double alpha_i, double alpha_bar, int s,
                            int k) {
    if (lag < 1) throw std::invalid_argument("truncation_surrogate: lag >= 1");
    const double two_k = 2.0 * k;
    double bound = 0.0;
    if (lag >= 2) {
        const double ln_lag = std::log(static_cast<double>(lag));
        bound += std::pow(static_cast<double>(lag), -(alpha_bar - 1.0)) *
                 std::pow(std::exp(1.0) * ln_lag / (2.0 * (s + 1)), s + 1) /
                 std::sqrt(static_cast<double>(s) + 1.0);
        bound += std::pow(two_k, -(4.0 - alpha_i)) *
                 std::pow(static_cast<double>(lag - 1),
                          -(two_k + alpha_i - 1.0));
    } else {
        bound += std::pow(two_k, -(4.0 - alpha_i));
    }
    return bound;
}

namespace {

using fft::Complex;

// Circulant symbol layout: sym[d mod P] holds the matrix value on diagonal
// offset d = a - b for an R x C block, P >= R + C - 1.
void accumulate_layer(const double* gen, int band, int R, int C,
                      std::size_t P, const Complex* x_hat,
                      std::vector<Complex>& sym) {
    sym.assign(P, Complex(0.0, 0.0));
    for (int d = -(C - 1); d <= R - 1; ++d) {
        const int lag = C + d;
        if (lag <= band) continue;
        const std::size_t idx =
            d >= 0 ? static_cast<std::size_t>(d) : P - static_cast<std::size_t>(-d);
        sym[idx] = Complex(gen[lag], 0.0);
    }
    fft::forward(sym);
    for (std::size_t i = 0; i < P; ++i) sym[i] *= x_hat[i];
    fft::inverse(sym);
}

}  // namespace

std::vector<double> toeplitz_matvec(const std::vector<double>& first_col,
                                    const std::vector<double>& first_row,
                                    const std::vector<double>& x) {
    const std::size_t m = first_col.size();
    if (m == 0 || first_row.size() != m || x.size() != m)
        throw std::invalid_argument("toeplitz_matvec: length mismatch");
    if (!(first_col[0] == first_row[0]))
        throw std::invalid_argument(
            "toeplitz_matvec: first_col[0] != first_row[0]");
    const std::size_t P = fft::next_pow2(2 * m);
    std::vector<Complex> sym(P, Complex(0.0, 0.0));
    for (std::size_t d = 0; d < m; ++d) sym[d] = Complex(first_col[d], 0.0);
    for (std::size_t d = 1; d < m; ++d) sym[P - d] = Complex(first_row[d], 0.0);
    std::vector<Complex> xc(P, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < m; ++i) xc[i] = Complex(x[i], 0.0);
    fft::forward(sym);
    fft::forward(xc);
    for (std::size_t i = 0; i < P; ++i) sym[i] *= xc[i];
    fft::inverse(sym);
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = sym[i].real();
    return y;
}

std::vector<double> block_matvec(const BlockSpec& spec,
                                 const StructuredTables& tables,
                                 const ApproxParams& params,
                                 const Problem& problem, const Grid& grid,
                                 std::span<const double> x) {
    if (spec.col_hi != spec.row_lo || spec.col_lo < 1 ||
        spec.col_lo >= spec.col_hi || spec.row_lo >= spec.row_hi ||
        spec.row_hi > grid.n + 2)
        throw std::invalid_argument("block_matvec: invalid block spec");
    const int R = spec.row_hi - spec.row_lo;
    const int C = spec.col_hi - spec.col_lo;
    if (static_cast<int>(x.size()) != C)
        throw std::invalid_argument("block_matvec: x length != block columns");

    std::vector<double> y(static_cast<std::size_t>(R), 0.0);
    const int band = params.band;
    const int max_lag = R + C - 1;

    if (band < max_lag) {
        const std::size_t P =
            fft::next_pow2(static_cast<std::size_t>(max_lag));
        std::vector<Complex> x_hat(P, Complex(0.0, 0.0));
        for (int b = 0; b < C; ++b)
            x_hat[static_cast<std::size_t>(b)] = Complex(x[b], 0.0);
        fft::forward(x_hat);

        const int nthreads = max_threads();
        std::vector<std::vector<double>> partial(
            static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
        {
#ifdef _OPENMP
            const int tid = omp_get_thread_num();
#else
            const int tid = 0;
#endif
            std::vector<Complex> work;
            std::vector<double>& acc = partial[static_cast<std::size_t>(tid)];
#pragma omp for schedule(static)
            for (int L = 0; L < tables.layers(); ++L) {
                if (tables.layer_max_scaling[static_cast<std::size_t>(L)] == 0.0)
                    continue;
                const std::size_t stride = static_cast<std::size_t>(tables.n) + 2;
                const double* gen =
                    tables.generators.data() + static_cast<std::size_t>(L) * stride;
                const double* scal =
                    tables.scalings.data() + static_cast<std::size_t>(L) * stride;
                accumulate_layer(gen, band, R, C, P, x_hat.data(), work);
                if (acc.empty()) acc.assign(static_cast<std::size_t>(R), 0.0);
                for (int a = 0; a < R; ++a)
                    acc[static_cast<std::size_t>(a)] +=
                        scal[spec.row_lo + a] * work[static_cast<std::size_t>(a)].real();
            }
        }
        for (int t = 0; t < nthreads; ++t) {
            const auto& acc = partial[static_cast<std::size_t>(t)];
            if (acc.empty()) continue;
            for (int a = 0; a < R; ++a) y[static_cast<std::size_t>(a)] += acc[static_cast<std::size_t>(a)];
        }
    }

    // Exact corner: lags a+1 .. min(band, a+C) in local row a.
    const int psi_rows = std::min(R, band);
    ExceptionCollector errs;
#pragma omp parallel for schedule(dynamic, 8) num_threads(max_threads()) \
    if (static_cast<long>(psi_rows) * std::min(band, C) > 65536)
    for (int a = 0; a < psi_rows; ++a) {
        errs.run([&, a] {
            const int i = spec.row_lo + a;
            const double alpha_i =
                problem.alpha(grid.nodes[static_cast<std::size_t>(i)]);
            const double scale = row_scale(i, problem, grid);
            if (scale == 0.0) return;
            const int lag_hi = std::min(band, a + C);
            double acc = 0.0;
            for (int lag = a + 1; lag <= lag_hi; ++lag) {
                const int j = i - lag;
                acc += (scale * t_exact(lag, alpha_i)) *
                       x[static_cast<std::size_t>(j - spec.col_lo)];
            }
            y[static_cast<std::size_t>(a)] += acc;
        });
    }
    errs.rethrow();
    return y;
}

}  // namespace vofde
