#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "vofde/assembly.hpp"
#include "vofde/structured.hpp"

namespace vofde {

enum class SolverKind { FS, FDAC };

// The dense baseline refuses grids above this interior-node count.
inline constexpr int kMaxDenseN = 1 << 15;

struct SolveReport {
    std::vector<double> v;  // length N+1
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
    SolverKind solver_kind = SolverKind::FS;
    std::optional<ApproxParams> params_used;
};

// v_i = (f_i - sum_{j<i} A_{i,j} v_j) / A_{i,i}.
std::vector<double> forward_substitution(const DenseLowerSystem& system);

// The block split and base ranges the recursion visits, in application
// order. Exposed for instrumentation-style tests.
struct FdacPartition {
    std::vector<BlockSpec> offdiag;
    std::vector<std::pair<int, int>> base_ranges;  // [lo, hi), 1-based
};
FdacPartition fdac_partition(int system_size, const ApproxParams& params);

// Recursive solve of the approximated system: leading block, trailing RHS
// update through block_matvec, trailing block; blocks of size <= params.base
// are assembled exactly and solved directly.
SolveReport fdac_solve(const Problem& problem, const Grid& grid,
                       const ApproxParams& params,
                       const std::vector<double>& rhs);

// Dispatch plus wall-clock split. FS: dense assembly vs substitution;
// FDAC: table precompute vs recursion.
SolveReport solve(const Problem& problem, const Grid& grid, SolverKind method,
                  std::optional<ApproxParams> params = std::nullopt);

// Dense matrix of the operator the FDAC recursion actually applies: exact
// inside base diagonal blocks and at lags <= band, the table-based
// approximation elsewhere. RHS matches assemble_rhs.
DenseLowerSystem materialize_approx(const Problem& problem, const Grid& grid,
                                    const ApproxParams& params);

// max |A_approx - A| over the entries the recursion approximates. Rows may
// be subsampled (row_stride > 1) for large systems.
double max_approx_entry_error(const Problem& problem, const Grid& grid,
                              const ApproxParams& params, int row_stride = 1);

// Same restricted to a single lag (must exceed params.band).
double approx_entry_error_at_lag(const Problem& problem, const Grid& grid,
                                 const ApproxParams& params, int lag);

}  // namespace vofde
