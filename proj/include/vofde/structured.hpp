#pragma once

#include <span>
#include <vector>

#include "vofde/assembly.hpp"
#include "vofde/model.hpp"

namespace vofde {

// Precomputed separable factors of the off-diagonal approximation
//   A_{i,j} ~= sum_{p,q} K^{p,q}(i) * g^{p,q}(i-j),
// with g^{p,q}(m) = ln^p(m) / m^{abar+2q-3} and
// K^{p,q}(i) = 2 d(x_i) h^{2-a_i}/Gamma(4-a_i) * (abar-a_i)^p/p!
//              * binom(3-a_i, 2q).
// Layers are indexed by (p,q) with p = 0..s, q = 1..k; lag/row index 0 of
// each layer is unused padding.
struct StructuredTables {
    int n = 0;
    int s = 0;
    int k = 1;
    double alpha_bar = 0.0;
    std::vector<double> generators;  // layers() * (n+2)
    std::vector<double> scalings;    // layers() * (n+2)
    std::vector<double> layer_max_scaling;

    int layers() const { return (s + 1) * k; }
    int layer(int p, int q) const { return p * k + (q - 1); }
    const double* gen(int p, int q) const {
        return generators.data() +
               static_cast<std::size_t>(layer(p, q)) * (n + 2);
    }
    const double* scal(int p, int q) const {
        return scalings.data() + static_cast<std::size_t>(layer(p, q)) * (n + 2);
    }
};

StructuredTables precompute_tables(const Problem& problem, const Grid& grid,
                                   const ApproxParams& params);

// Truncated expansion of t_exact(lag, alpha_i):
//   2 lag^{3-abar} [sum_{p<=s} (abar-a_i)^p ln^p(lag)/p!]
//                  [sum_{q<=k} binom(3-a_i, 2q) lag^{-2q}].
double t_approx(int lag, double alpha_i, double alpha_bar, int s, int k);

// Constant-free bound on the truncation error; only its monotonicity and
// relative size are meaningful.
double truncation_surrogate(int lag, double alpha_i, double alpha_bar, int s,
                            int k);

// y = T x for the square Toeplitz matrix with the given first column/row,
// via circulant embedding and the FFT. first_col[0] must equal first_row[0].
std::vector<double> toeplitz_matvec(const std::vector<double>& first_col,
                                    const std::vector<double>& first_row,
                                    const std::vector<double>& x);

// Off-diagonal sub-block of the lower triangle: rows [row_lo, row_hi),
// columns [col_lo, col_hi), 1-based, with col_hi == row_lo so every entry
// has lag i-j >= 1.
struct BlockSpec {
    int row_lo = 0;
    int row_hi = 0;
    int col_lo = 0;
    int col_hi = 0;
};

// (Gamma_hat + Psi) x: the banded Toeplitz-sum part is applied per layer via
// the FFT with lags <= params.band zeroed out of the symbols, and the exact
// near-band corner (lags <= band) is added entry by entry.
std::vector<double> block_matvec(const BlockSpec& spec,
                                 const StructuredTables& tables,
                                 const ApproxParams& params,
                                 const Problem& problem, const Grid& grid,
                                 std::span<const double> x);

}  // namespace vofde
