#pragma once

#include <cstdint>
#include <optional>

#include "rankred/gfp_kernel.hpp"
#include "rankred/instances.hpp"

namespace rankred {

struct SearchBudget {
  std::uint64_t max_assignments = 1ull << 24;
  std::uint64_t max_pure_candidates = 1ull << 20;
};

/// Raised when the tensor oracle exhausts r_max without finding a
/// decomposition; the true rank is known to exceed r_max.
class RankAboveLimit : public std::runtime_error {
 public:
  explicit RankAboveLimit(std::size_t r_max)
      : std::runtime_error("tensor rank exceeds r_max = " + std::to_string(r_max)),
        r_max(r_max) {}
  std::size_t r_max;
};

struct OracleResult {
  std::size_t minimum = 0;
  Assignment witness;                      // min-rank and completion searches
  std::vector<PureTensor> decomposition;   // tensor rank search
  std::uint64_t explored = 0;
};

/// Exact minimum of rank(A + sum x_i B_i) over all assignments, by full
/// enumeration of the p^s assignment space.  The witness is the
/// lexicographically smallest minimizer (variables in sorted-id order).
/// threads = 0 uses the OpenMP default; every thread count returns the same
/// result.
OracleResult min_rank_exhaustive(const AffineMatrixFamily& fam, const SearchBudget& budget = {},
                                 int threads = 0);

/// Minimal completion rank of a partial matrix.  Splits the grid into
/// independent blocks (connected components of the nonzero/unknown pattern)
/// and runs min_rank_exhaustive on each one through lrmc_as_1rm; rank is
/// additive across blocks, so the combined result is exact and the budget
/// applies per block.
OracleResult mrank_exhaustive(const PartialMatrix& p, const SearchBudget& budget = {},
                              int threads = 0);

/// Default search ceiling for a tensor rank query: the trivial bound
/// prod(shape) / max(shape).
std::size_t default_r_max(const std::vector<std::size_t>& shape);

/// Smallest r such that T is a sum of r pure tensors, by depth-first search
/// over normalized pure-tensor candidates (factors 1..d-1 scaled to leading
/// coefficient 1, the remaining scalar absorbed into the last factor) with
/// iterative deepening and flattening-rank pruning.
OracleResult tensor_rank_exhaustive(const Tensor& t, const SearchBudget& budget = {},
                                    std::optional<std::size_t> r_max = std::nullopt);

}  // namespace rankred
