#include "rankred/rm_to_1rm.hpp"

namespace rankred {

namespace {

std::string var_name(const char* stem, std::size_t level, std::size_t i) {
  return std::string(stem) + "." + std::to_string(level) + "." + std::to_string(i);
}

std::string var_name(const char* stem, std::size_t level, std::size_t i, std::size_t j) {
  return var_name(stem, level, i) + "." + std::to_string(j);
}

/// Core step: treats `base` plus `passengers` as the affine part and splits
/// the term `b` into the gadget blocks.  Appends the new rank-one terms.
JGadget build_j_step(const Matrix& base, const std::vector<FamilyTerm>& passengers,
                     const Matrix& b, std::size_t level) {
  const Field f = base.field();
  const std::size_t n = base.rows(), m = base.cols();

  JGadget g{AffineMatrixFamily(base), {}, n, m, 0, {}, {}};
  g.source_decomp = b.rank_one_decompose();
  g.r = g.source_decomp.size();
  g.recover.source_var = var_name("x", level, 0);  // caller overwrites

  if (g.r == 0) {
    // degenerate zero coefficient: keep the original family shape
    std::vector<FamilyTerm> terms = passengers;
    terms.push_back({var_name("x", level, 1), Matrix(f, n, m)});
    g.family = AffineMatrixFamily(base, std::move(terms));
    g.recover.x_vars = {var_name("x", level, 1)};
    return g;
  }

  for (std::size_t a = 1; a < g.r; ++a)
    for (std::size_t bb = a + 1; bb <= g.r; ++bb) g.pairs.emplace_back(a, bb);
  const std::size_t npairs = g.pairs.size();
  const std::size_t rows = n + npairs, cols = m + 2 * npairs;

  std::vector<FamilyTerm> terms;
  terms.reserve(passengers.size() + g.r + 3 * npairs);
  for (const auto& t : passengers) terms.push_back({t.var, t.coeff.zero_extended(rows, cols)});

  // x_i: v_i w_i^t in the E block, -v_i in every C column the index joins
  for (std::size_t i = 1; i <= g.r; ++i) {
    const auto& [v, w] = g.source_decomp[i - 1];
    Matrix coeff = Matrix::outer(v, w).zero_extended(rows, cols);
    for (std::size_t t = 0; t < npairs; ++t) {
      const auto& [pa, pb] = g.pairs[t];
      if (pa == i)
        for (std::size_t row = 0; row < n; ++row) coeff.at(row, m + 2 * t) = -v[row];
      if (pb == i)
        for (std::size_t row = 0; row < n; ++row) coeff.at(row, m + 2 * t + 1) = -v[row];
    }
    const VarId id = var_name("x", level, i);
    g.recover.x_vars.push_back(id);
    terms.push_back({id, std::move(coeff)});
  }

  // y_{i,j}: +v_i on its C column plus the matching D entry (one nonzero column)
  for (std::size_t t = 0; t < npairs; ++t) {
    const auto& [pa, pb] = g.pairs[t];
    for (const auto& [i, j, side] :
         {std::tuple<std::size_t, std::size_t, std::size_t>{pa, pb, 0},
          std::tuple<std::size_t, std::size_t, std::size_t>{pb, pa, 1}}) {
      const Vec& v = g.source_decomp[i - 1].first;
      Matrix coeff(f, rows, cols);
      const std::size_t col = m + 2 * t + side;
      for (std::size_t row = 0; row < n; ++row) coeff.at(row, col) = v[row];
      coeff.at(n + t, col) = Scalar::one(f);
      const VarId id = var_name("y", level, i, j);
      g.recover.y_vars.emplace_back(i, j, id);
      terms.push_back({id, std::move(coeff)});
    }
  }

  // z_{i,j} = z_{j,i}: minus ones across its D row (one nonzero row)
  for (std::size_t t = 0; t < npairs; ++t) {
    const auto& [pa, pb] = g.pairs[t];
    Matrix coeff(f, rows, cols);
    coeff.at(n + t, m + 2 * t) = -Scalar::one(f);
    coeff.at(n + t, m + 2 * t + 1) = -Scalar::one(f);
    const VarId id = var_name("z", level, pa, pb);
    g.recover.z_vars.emplace_back(pa, pb, id);
    terms.push_back({id, std::move(coeff)});
  }

  g.family = AffineMatrixFamily(base.zero_extended(rows, cols), std::move(terms));
  return g;
}

Scalar recover_from_level(const RecoverXLevel& level, const Field& f, const Assignment& a) {
  if (level.x_vars.empty()) return Scalar::zero(f);
  const std::size_t r = level.x_vars.size();

  auto z_value = [&](std::size_t i, std::size_t j) -> const Scalar& {
    const std::size_t lo = std::min(i, j), hi = std::max(i, j);
    for (const auto& [zi, zj, id] : level.z_vars)
      if (zi == lo && zj == hi) return a.get(id);
    throw std::logic_error("recover_x: missing z variable");
  };

  std::vector<bool> in_z(r + 1, false);
  for (const auto& [i, j, id] : level.y_vars) {
    const Scalar& y = a.get(id);
    if (y != z_value(i, j) || a.get(level.x_vars[i - 1]) != y) in_z[i] = true;
  }

  std::size_t pick = 1;
  for (std::size_t j = 1; j <= r; ++j) {
    if (!in_z[j]) {
      pick = j;
      break;
    }
  }
  return a.get(level.x_vars[pick - 1]);
}

}  // namespace

JGadget build_j(const Matrix& a, const Matrix& b, std::size_t level) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("build_j: A and B must share dimensions");
  return build_j_step(a, {}, b, level);
}

Scalar recover_x(const JGadget& g, const Assignment& a) {
  return recover_from_level(g.recover, g.family.field(), a);
}

std::pair<AffineMatrixFamily, Certificate> reduce_rm_to_1rm(const AffineMatrixFamily& fam) {
  Matrix base = fam.base();
  std::vector<FamilyTerm> pending;
  std::vector<RecoverXLevel> levels;

  for (const auto& t : fam.terms()) {
    if (t.coeff.is_zero()) {
      // a zero coefficient never moves the rank; record a trivial readback
      RecoverXLevel dropped;
      dropped.source_var = t.var;
      levels.push_back(std::move(dropped));
    } else {
      pending.push_back(t);
    }
  }

  std::size_t next_level = 1;
  std::vector<FamilyTerm> remaining = pending;
  Matrix cur_base = base;
  std::vector<FamilyTerm> gadget_terms;
  for (std::size_t step = 0; step < pending.size(); ++step) {
    const FamilyTerm todo = remaining.front();
    remaining.erase(remaining.begin());

    std::vector<FamilyTerm> passengers = gadget_terms;
    passengers.insert(passengers.end(), remaining.begin(), remaining.end());

    JGadget g = build_j_step(cur_base, passengers, todo.coeff, next_level);
    g.recover.source_var = todo.var;
    levels.push_back(g.recover);
    ++next_level;

    cur_base = g.family.base();
    // split the result back into processed terms and still-pending ones
    gadget_terms.clear();
    std::vector<FamilyTerm> new_remaining;
    for (const auto& t : g.family.terms()) {
      bool is_pending = false;
      for (const auto& r : remaining)
        if (r.var == t.var) is_pending = true;
      (is_pending ? new_remaining : gadget_terms).push_back(t);
    }
    remaining = std::move(new_remaining);
  }

  AffineMatrixFamily out(cur_base, gadget_terms);
  Certificate cert;
  cert.offset = 0;
  cert.pullback = levels;
  return {std::move(out), std::move(cert)};
}

Assignment apply_recover_x_levels(const std::vector<RecoverXLevel>& levels, const Field& f,
                                  const Assignment& reduced) {
  Assignment out;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it)
    out.set(it->source_var, recover_from_level(*it, f, reduced));
  return out;
}

}  // namespace rankred
