#include "rankred/gfp_kernel.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rankred {

std::uint64_t GfpFamily::assignment_count() const {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (total > (1ull << 63) / p)
      throw BudgetExceeded("assignment space exceeds 2^63");
    total *= p;
  }
  return total;
}

GfpFamily lower_family(const AffineMatrixFamily& fam) {
  if (!fam.field().is_prime_field())
    throw InfiniteField("exhaustive search needs a finite field");
  GfpFamily g;
  g.p = fam.field().modulus();
  g.rows = fam.rows();
  g.cols = fam.cols();
  g.base.resize(g.rows * g.cols);
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j)
      g.base[i * g.cols + j] = static_cast<std::uint16_t>(fam.base().at(i, j).residue());

  g.var_ids = fam.sorted_var_ids();
  g.vars.resize(g.var_ids.size());
  for (const auto& t : fam.terms()) {
    const std::size_t slot =
        std::lower_bound(g.var_ids.begin(), g.var_ids.end(), t.var) - g.var_ids.begin();
    auto& support = g.vars[slot].cells;
    for (std::size_t i = 0; i < g.rows; ++i)
      for (std::size_t j = 0; j < g.cols; ++j) {
        const Scalar& c = t.coeff.at(i, j);
        if (!c.is_zero())
          support.emplace_back(static_cast<std::uint32_t>(i * g.cols + j),
                               static_cast<std::uint16_t>(c.residue()));
      }
  }

  g.inv.resize(g.p);
  for (std::uint32_t a = 1; a < g.p; ++a) g.inv[a] = static_cast<std::uint16_t>(gf_inverse(a, g.p));
  return g;
}

std::size_t gfp_rank(std::span<std::uint32_t> m, std::size_t rows, std::size_t cols,
                     std::uint32_t p, std::span<const std::uint16_t> inv, std::size_t stop_at) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (m[i * cols + c] % p != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m[r * cols + j], m[pivot * cols + j]);
    const std::uint64_t pinv = inv[m[r * cols + c] % p];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::uint32_t lead = m[i * cols + c] % p;
      if (lead == 0) continue;
      const std::uint64_t factor = (p - (lead * pinv) % p) % p;
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        m[i * cols + j] = static_cast<std::uint32_t>(
            (m[i * cols + j] + factor * (m[r * cols + j] % p)) % p);
    }
    ++r;
    if (r >= stop_at) return r;
  }
  return r;
}

void decode_digits(const GfpFamily& fam, std::uint64_t index, std::vector<std::uint16_t>& digits) {
  digits.assign(fam.vars.size(), 0);
  for (std::size_t k = fam.vars.size(); k-- > 0;) {
    digits[k] = static_cast<std::uint16_t>(index % fam.p);
    index /= fam.p;
  }
}

Assignment decode_assignment(const GfpFamily& fam, std::uint64_t index) {
  std::vector<std::uint16_t> digits;
  decode_digits(fam, index, digits);
  Assignment a;
  const Field f = Field::gf(fam.p);
  for (std::size_t k = 0; k < fam.var_ids.size(); ++k)
    a.set(fam.var_ids[k], Scalar::gf_residue(f, digits[k]));
  return a;
}

namespace {

/// Odometer walk over [begin, end), keeping the evaluated matrix current by
/// applying per-digit deltas on the sparse variable supports.
class FamilyWalker {
 public:
  FamilyWalker(const GfpFamily& fam, std::uint64_t begin) : fam_(fam) {
    decode_digits(fam, begin, digits_);
    work_.assign(fam.base.begin(), fam.base.end());
    for (std::size_t k = 0; k < digits_.size(); ++k)
      if (digits_[k] != 0) apply_delta(k, digits_[k]);
  }

  const std::vector<std::uint16_t>& digits() const { return digits_; }
  const std::vector<std::uint16_t>& matrix() const { return work_; }

  /// Advances the odometer by one (last digit fastest).
  void step() {
    for (std::size_t k = digits_.size(); k-- > 0;) {
      if (digits_[k] + 1u < fam_.p) {
        apply_delta(k, 1);
        ++digits_[k];
        return;
      }
      // wrap: subtract the accumulated value p-1, i.e. add 1 mod p
      apply_delta(k, static_cast<std::uint16_t>(1 % fam_.p));
      digits_[k] = 0;
    }
  }

 private:
  void apply_delta(std::size_t var, std::uint16_t times) {
    const std::uint32_t t = times % fam_.p;
    if (t == 0) return;
    for (const auto& [pos, coeff] : fam_.vars[var].cells)
      work_[pos] = static_cast<std::uint16_t>((work_[pos] + t * coeff) % fam_.p);
  }

  const GfpFamily& fam_;
  std::vector<std::uint16_t> digits_;
  std::vector<std::uint16_t> work_;
};

}  // namespace

EnumBest min_rank_scan_serial(const GfpFamily& fam, std::uint64_t begin, std::uint64_t end) {
  EnumBest best;
  if (begin >= end) return best;
  FamilyWalker walker(fam, begin);
  std::vector<std::uint32_t> scratch(fam.rows * fam.cols);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const auto& m = walker.matrix();
    std::copy(m.begin(), m.end(), scratch.begin());
    const std::size_t r =
        gfp_rank(scratch, fam.rows, fam.cols, fam.p, fam.inv, best.rank);
    if (r < best.rank) {
      best.rank = r;
      best.index = idx;
      if (r == 0) return best;  // cannot improve
    }
    if (idx + 1 < end) walker.step();
  }
  return best;
}

EnumBest min_rank_scan_parallel(const GfpFamily& fam, std::uint64_t total, int threads) {
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#else
  threads = 1;
#endif
  if (threads <= 1 || total < 2)
    return min_rank_scan_serial(fam, 0, total);

  const std::uint64_t nchunks = std::min<std::uint64_t>(total, 4ull * threads);
  const std::uint64_t chunk = (total + nchunks - 1) / nchunks;
  std::vector<EnumBest> partial(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
#endif
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(nchunks); ++c) {
    const std::uint64_t b = c * chunk;
    const std::uint64_t e = std::min<std::uint64_t>(b + chunk, total);
    partial[c] = min_rank_scan_serial(fam, b, e);
  }
  // chunks are in index order, so taking the first strict improvement keeps
  // the first-witness tie break identical to the serial scan
  EnumBest best;
  for (const auto& pb : partial)
    if (pb.rank < best.rank) best = pb;
  return best;
}

void for_each_assignment(
    const GfpFamily& fam, std::uint64_t begin, std::uint64_t end,
    const std::function<void(std::uint64_t, std::span<const std::uint16_t>,
                             std::span<const std::uint16_t>)>& visit) {
  if (begin >= end) return;
  FamilyWalker walker(fam, begin);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    visit(idx, walker.digits(), walker.matrix());
    if (idx + 1 < end) walker.step();
  }
}

}  // namespace rankred
