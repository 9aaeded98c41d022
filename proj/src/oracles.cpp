#include "rankred/oracles.hpp"

#include <algorithm>
#include <numeric>

namespace rankred {

OracleResult min_rank_exhaustive(const AffineMatrixFamily& fam, const SearchBudget& budget,
                                 int threads) {
  GfpFamily g = lower_family(fam);
  const std::uint64_t total = g.assignment_count();
  if (total > budget.max_assignments)
    throw BudgetExceeded("min_rank_exhaustive: " + std::to_string(g.vars.size()) +
                         " variables over GF(" + std::to_string(g.p) +
                         ") exceed the assignment budget");
  OracleResult out;
  const EnumBest best = min_rank_scan_parallel(g, total, threads);
  out.minimum = best.rank;
  out.witness = decode_assignment(g, best.index);
  out.explored = total;
  // witness validity: the reported minimum must re-evaluate
  if (fam.evaluate(out.witness).rank() != out.minimum)
    throw std::logic_error("min_rank_exhaustive: witness failed re-evaluation");
  return out;
}

namespace {

/// Union-find over rows+cols of a partial matrix; cells that are unknown or
/// known-nonzero tie their row and column together.
class GridComponents {
 public:
  explicit GridComponents(const PartialMatrix& p) : parent_(p.rows() + p.cols()) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) {
        const bool active = p.is_unknown(i, j) || !p.known_at(i, j).is_zero();
        if (active) unite(i, p.rows() + j);
      }
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }

 private:
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }
  std::vector<std::size_t> parent_;
};

}  // namespace

OracleResult mrank_exhaustive(const PartialMatrix& p, const SearchBudget& budget, int threads) {
  GridComponents comps(p);

  // group rows/cols by component root, keeping original order
  std::map<std::size_t, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
  for (std::size_t i = 0; i < p.rows(); ++i) groups[comps.find(i)].first.push_back(i);
  for (std::size_t j = 0; j < p.cols(); ++j) groups[comps.find(p.rows() + j)].second.push_back(j);

  OracleResult out;
  for (const auto& [root, rows_cols] : groups) {
    const auto& [rows, cols] = rows_cols;
    if (rows.empty() || cols.empty()) continue;
    PartialMatrix sub(p.field(), rows.size(), cols.size());
    bool any_payload = false;
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < cols.size(); ++b) {
        if (p.is_unknown(rows[a], cols[b])) {
          sub.set_unknown(a, b, p.unknown_at(rows[a], cols[b]));
          any_payload = true;
        } else {
          sub.set_known(a, b, p.known_at(rows[a], cols[b]));
          any_payload = any_payload || !p.known_at(rows[a], cols[b]).is_zero();
        }
      }
    if (!any_payload) continue;
    OracleResult part = min_rank_exhaustive(lrmc_as_1rm(sub), budget, threads);
    out.minimum += part.minimum;
    out.explored += part.explored;
    for (const auto& [var, value] : part.witness) out.witness.set(var, value);
  }
  if (p.complete(out.witness).rank() != out.minimum)
    throw std::logic_error("mrank_exhaustive: witness failed re-evaluation");
  return out;
}

std::size_t default_r_max(const std::vector<std::size_t>& shape) {
  std::size_t prod = 1, mx = 0;
  for (std::size_t d : shape) {
    prod *= d;
    mx = std::max(mx, d);
  }
  return prod / mx;
}

namespace {

/// All nonzero vectors of length n over GF(p) in lexicographic digit order;
/// if `normalized`, only those with leading nonzero coefficient 1.
std::vector<Vec> enumerate_vectors(const Field& f, std::size_t n, bool normalized) {
  const std::uint32_t p = f.modulus();
  std::vector<Vec> out;
  std::vector<std::uint32_t> digits(n, 0);
  for (;;) {
    // advance odometer (last digit fastest); a full wrap ends the walk
    std::size_t k = n;
    bool wrapped = true;
    while (k-- > 0) {
      if (++digits[k] < p) {
        wrapped = false;
        break;
      }
      digits[k] = 0;
    }
    if (wrapped) return out;
    if (normalized) {
      std::size_t lead = 0;
      while (lead < n && digits[lead] == 0) ++lead;
      if (lead < n && digits[lead] != 1) continue;
    }
    Vec v;
    v.reserve(n);
    for (std::uint32_t d : digits) v.push_back(Scalar::gf_residue(f, d));
    out.push_back(std::move(v));
  }
}

struct TensorDfs {
  const Field field;
  const std::vector<std::size_t> shape;
  std::vector<PureTensor> cand_pure;
  std::vector<Tensor> cand_dense;
  std::uint64_t nodes = 0;
  std::uint64_t node_budget = 0;
  std::vector<std::size_t> chosen;

  std::size_t flattening_bound(const Tensor& t) const {
    std::size_t lb = 0;
    for (std::size_t m = 0; m < t.order(); ++m)
      lb = std::max(lb, t.mode_flattening(m).rank());
    return lb;
  }

  bool solve(const Tensor& residual, std::size_t r, std::size_t start,
             std::vector<PureTensor>& decomp) {
    if (++nodes > node_budget)
      throw BudgetExceeded("tensor_rank_exhaustive: search budget exceeded");
    if (residual.is_zero()) return r == 0 ? (decomp.clear(), true) : false;
    if (r == 0) return false;
    if (flattening_bound(residual) > r) return false;
    if (r == 1) {
      PureTensor pt;
      if (!extract_pure(residual, pt)) return false;
      decomp.assign(1, pt);
      return true;
    }
    for (std::size_t i = start; i < cand_dense.size(); ++i) {
      if (solve(residual - cand_dense[i], r - 1, i + 1, decomp)) {
        decomp.insert(decomp.begin(), cand_pure[i]);
        return true;
      }
    }
    return false;
  }
};

}  // namespace

OracleResult tensor_rank_exhaustive(const Tensor& t, const SearchBudget& budget,
                                    std::optional<std::size_t> r_max) {
  if (!t.field().is_prime_field())
    throw InfiniteField("tensor_rank_exhaustive needs a finite field");
  const std::size_t limit = r_max.value_or(default_r_max(t.shape()));

  OracleResult out;
  if (t.is_zero()) {
    out.minimum = 0;
    return out;
  }

  TensorDfs dfs{t.field(), t.shape(), {}, {}, 0, budget.max_assignments, {}};
  // candidate count check before materializing: prod over modes of the
  // normalized vector counts
  {
    const std::uint64_t p = t.field().modulus();
    long double est = 1;
    for (std::size_t m = 0; m < t.order(); ++m) {
      long double nonzero = 1;
      for (std::size_t i = 0; i < t.dim(m); ++i) nonzero *= p;
      nonzero -= 1;
      est *= (m + 1 < t.order()) ? nonzero / (p - 1) : nonzero;
    }
    if (est > static_cast<long double>(budget.max_pure_candidates))
      throw BudgetExceeded("tensor_rank_exhaustive: pure-tensor candidate set exceeds budget");
  }

  std::vector<std::vector<Vec>> per_mode;
  for (std::size_t m = 0; m < t.order(); ++m)
    per_mode.push_back(enumerate_vectors(t.field(), t.dim(m), m + 1 < t.order()));

  std::vector<std::size_t> pick(t.order(), 0);
  bool done = false;
  while (!done) {
    PureTensor pt;
    for (std::size_t m = 0; m < t.order(); ++m) pt.factors.push_back(per_mode[m][pick[m]]);
    dfs.cand_dense.push_back(pt.densify());
    dfs.cand_pure.push_back(std::move(pt));
    std::size_t m = t.order();
    done = true;
    while (m-- > 0) {
      if (++pick[m] < per_mode[m].size()) {
        done = false;
        break;
      }
      pick[m] = 0;
    }
  }

  for (std::size_t r = 1; r <= limit; ++r) {
    std::vector<PureTensor> decomp;
    if (dfs.solve(t, r, 0, decomp)) {
      out.minimum = r;
      out.decomposition = std::move(decomp);
      out.explored = dfs.nodes;
      if (!(sum_pure(t.field(), t.shape(), out.decomposition) == t))
        throw std::logic_error("tensor_rank_exhaustive: witness failed re-evaluation");
      return out;
    }
  }
  throw RankAboveLimit(limit);
}

}  // namespace rankred
