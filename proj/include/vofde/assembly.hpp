#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "vofde/model.hpp"

namespace vofde {

// Lower-triangular collocation matrix A (rows/cols 1..N+1) in packed
// row-major storage plus the right-hand side. Row i holds i entries for
// columns 1..i.
struct DenseLowerSystem {
    int size = 0;
    std::vector<double> entries;  // size*(size+1)/2
    std::vector<double> rhs;      // length size

    const double* row(int i) const {
        return entries.data() + static_cast<std::size_t>(i - 1) * i / 2;
    }
    double* row(int i) {
        return entries.data() + static_cast<std::size_t>(i - 1) * i / 2;
    }
    // 1-based accessor; zero above the diagonal.
    double at(int i, int j) const { return j > i ? 0.0 : row(i)[j - 1]; }
};

// Second difference (lag-1)^{3-a} - 2 lag^{3-a} + (lag+1)^{3-a}; lag >= 1.
double t_exact(int lag, double alpha_i);

// d(x_i) h^{2-alpha(x_i)} / Gamma(4-alpha(x_i)).
double row_scale(int i, const Problem& problem, const Grid& grid);

// A_{i,j} for 1 <= j <= i <= N+1.
double exact_entry(int i, int j, const Problem& problem, const Grid& grid);

// f_n for n = 1..N+1, with the v_0 = -f(0) elimination folded in.
std::vector<double> assemble_rhs(const Problem& problem, const Grid& grid);

// Packed triangular entries of rows/cols [lo, hi), bit-identical to
// exact_entry. Shared by the dense baseline and the recursion base case.
std::vector<double> dense_lower_block(const Problem& problem, const Grid& grid,
                                      int lo, int hi);
std::vector<double> dense_lower_block_serial(const Problem& problem,
                                             const Grid& grid, int lo, int hi);

DenseLowerSystem assemble_dense(const Problem& problem, const Grid& grid);
DenseLowerSystem assemble_dense_serial(const Problem& problem, const Grid& grid);

}  // namespace vofde
