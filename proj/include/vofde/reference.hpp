#pragma once

// Straightforward serial kernels kept as oracles for the fast paths and as
// baselines for the kernel benchmark. None of these share code with the
// implementations they check.

#include <span>
#include <stdexcept>
#include <vector>

#include "vofde/assembly.hpp"
#include "vofde/structured.hpp"

namespace vofde::reference {

inline std::vector<double> toeplitz_matvec_naive(
    const std::vector<double>& first_col, const std::vector<double>& first_row,
    const std::vector<double>& x) {
    const std::size_t m = first_col.size();
    if (first_row.size() != m || x.size() != m)
        throw std::invalid_argument("toeplitz_matvec_naive: length mismatch");
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double t = i >= j ? first_col[i - j] : first_row[j - i];
            acc += t * x[j];
        }
        y[i] = acc;
    }
    return y;
}

// Dense exact sub-block times x, entry by entry.
inline std::vector<double> block_matvec_dense_exact(
    const BlockSpec& spec, const Problem& problem, const Grid& grid,
    std::span<const double> x) {
    const int rows = spec.row_hi - spec.row_lo;
    const int cols = spec.col_hi - spec.col_lo;
    if (static_cast<int>(x.size()) != cols)
        throw std::invalid_argument("block_matvec_dense_exact: bad x length");
    std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
    for (int a = 0; a < rows; ++a) {
        double acc = 0.0;
        for (int b = 0; b < cols; ++b)
            acc += exact_entry(spec.row_lo + a, spec.col_lo + b, problem, grid) *
                   x[static_cast<std::size_t>(b)];
        y[static_cast<std::size_t>(a)] = acc;
    }
    return y;
}

// Same banded split as block_matvec but with direct summation of the table
// layers instead of the FFT.
inline std::vector<double> block_matvec_dense_approx(
    const BlockSpec& spec, const StructuredTables& tables,
    const ApproxParams& params, const Problem& problem, const Grid& grid,
    std::span<const double> x) {
    const int rows = spec.row_hi - spec.row_lo;
    const int cols = spec.col_hi - spec.col_lo;
    if (static_cast<int>(x.size()) != cols)
        throw std::invalid_argument("block_matvec_dense_approx: bad x length");
    std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
    const std::size_t stride = static_cast<std::size_t>(tables.n) + 2;
    for (int a = 0; a < rows; ++a) {
        const int i = spec.row_lo + a;
        const double alpha_i =
            problem.alpha(grid.nodes[static_cast<std::size_t>(i)]);
        const double scale = row_scale(i, problem, grid);
        double acc = 0.0;
        for (int b = 0; b < cols; ++b) {
            const int lag = i - (spec.col_lo + b);
            double entry;
            if (lag <= params.band) {
                entry = scale * t_exact(lag, alpha_i);
            } else {
                entry = 0.0;
                for (int L = 0; L < tables.layers(); ++L)
                    entry += tables.scalings[static_cast<std::size_t>(L) * stride + i] *
                             tables.generators[static_cast<std::size_t>(L) * stride + lag];
            }
            acc += entry * x[static_cast<std::size_t>(b)];
        }
        y[static_cast<std::size_t>(a)] = acc;
    }
    return y;
}

}  // namespace vofde::reference
