#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rankred/instances.hpp"

namespace rankred {

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

class InfiniteField : public std::runtime_error {
 public:
  explicit InfiniteField(const std::string& what) : std::runtime_error(what) {}
};

/// Compact mod-p image of an affine matrix family, used by the exhaustive
/// search kernels.  Variables are held in sorted-id order; assignment index
/// i encodes the variable values as base-p digits with the first variable as
/// the most significant digit, so increasing index is lexicographic order on
/// witnesses.
struct GfpFamily {
  std::uint32_t p = 2;
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint16_t> base;  // row-major
  struct Support {
    std::vector<std::pair<std::uint32_t, std::uint16_t>> cells;  // (flat pos, coeff)
  };
  std::vector<Support> vars;
  std::vector<VarId> var_ids;
  std::vector<std::uint16_t> inv;  // inverse table, inv[a] for a in [1, p)

  std::uint64_t assignment_count() const;  // p^s, throws BudgetExceeded past 2^63
};

GfpFamily lower_family(const AffineMatrixFamily& fam);

/// Rank of a rows x cols matrix mod p, destroying `m`.  Stops and returns
/// `stop_at` as soon as that many pivots are found.
std::size_t gfp_rank(std::span<std::uint32_t> m, std::size_t rows, std::size_t cols,
                     std::uint32_t p, std::span<const std::uint16_t> inv,
                     std::size_t stop_at = SIZE_MAX);

void decode_digits(const GfpFamily& fam, std::uint64_t index, std::vector<std::uint16_t>& digits);
Assignment decode_assignment(const GfpFamily& fam, std::uint64_t index);

struct EnumBest {
  std::size_t rank = SIZE_MAX;
  std::uint64_t index = 0;
};

/// Serial reference: scans [begin, end) in order and returns the smallest
/// rank together with the first index attaining it.  Elimination aborts as
/// soon as the running pivot count reaches the best rank so far.
EnumBest min_rank_scan_serial(const GfpFamily& fam, std::uint64_t begin, std::uint64_t end);

/// OpenMP kernel over contiguous chunks of the index space.  The merged
/// result is identical to the serial scan for every thread count.
EnumBest min_rank_scan_parallel(const GfpFamily& fam, std::uint64_t total, int threads);

/// Visits every assignment in [begin, end) with its digit vector and the
/// evaluated matrix (row-major, reduced mod p).  Serial; used by the
/// pointwise gadget checks.
void for_each_assignment(
    const GfpFamily& fam, std::uint64_t begin, std::uint64_t end,
    const std::function<void(std::uint64_t, std::span<const std::uint16_t>,
                             std::span<const std::uint16_t>)>& visit);

}  // namespace rankred
