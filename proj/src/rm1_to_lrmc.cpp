#include "rankred/rm1_to_lrmc.hpp"

#include <set>

namespace rankred {

namespace {

std::pair<Vec, Vec> rank_one_factors(const Matrix& coeff, const char* who) {
  auto decomp = coeff.rank_one_decompose();
  if (decomp.size() != 1)
    throw std::invalid_argument(std::string(who) + ": selected coefficient is not rank one");
  return decomp.front();
}

AffineMatrixFamily border(const AffineMatrixFamily& fam, std::size_t term_index, bool column,
                          BorderStep* step) {
  if (term_index >= fam.terms().size())
    throw std::out_of_range("border: term index out of range");
  const Field f = fam.field();
  const std::size_t n = fam.rows(), m = fam.cols();

  // pivot-normalized factors; the row variant mirrors the normalization so
  // the fresh single entry always carries coefficient 1
  auto [v, w] = rank_one_factors(fam.terms()[term_index].coeff, column ? "border_column" : "border_row");
  if (!column) {
    std::size_t pivot = 0;
    while (w[pivot].is_zero()) ++pivot;
    const Scalar c = w[pivot];
    v = vec_scaled(v, c);
    w = vec_scaled(w, c.inverse());
  }

  Matrix base(f, n + 1, m + 1);
  base.paste(fam.base(), 0, 0);
  if (column) {
    for (std::size_t j = 0; j < m; ++j) base.at(n, j) = w[j];
  } else {
    for (std::size_t i = 0; i < n; ++i) base.at(i, m) = v[i];
  }
  base.at(n, m) = -Scalar::one(f);

  std::vector<FamilyTerm> terms;
  terms.reserve(fam.terms().size());
  for (std::size_t t = 0; t < fam.terms().size(); ++t) {
    if (t != term_index) {
      terms.push_back({fam.terms()[t].var, fam.terms()[t].coeff.zero_extended(n + 1, m + 1)});
      continue;
    }
    Matrix coeff(f, n + 1, m + 1);
    if (column) {
      for (std::size_t i = 0; i < n; ++i) coeff.at(i, m) = v[i];
    } else {
      for (std::size_t j = 0; j < m; ++j) coeff.at(n, j) = w[j];
    }
    terms.push_back({fam.terms()[t].var, std::move(coeff)});
  }

  if (step) {
    step->kind = column ? BorderStep::Kind::column : BorderStep::Kind::row;
    step->v = v;
    step->w = w;
    step->new_row = n;
    step->new_col = m;
  }
  return AffineMatrixFamily(std::move(base), std::move(terms));
}

std::size_t single_nonzero_index(const Vec& v) {
  std::size_t idx = v.size(), count = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) {
      idx = i;
      ++count;
    }
  return count == 1 ? idx : v.size();
}

}  // namespace

AffineMatrixFamily border_column(const AffineMatrixFamily& fam, std::size_t term_index,
                                 BorderStep* step) {
  return border(fam, term_index, true, step);
}

AffineMatrixFamily border_row(const AffineMatrixFamily& fam, std::size_t term_index,
                              BorderStep* step) {
  return border(fam, term_index, false, step);
}

std::pair<PartialMatrix, Certificate> reduce_1rm_to_lrmc(const AffineMatrixFamily& fam) {
  if (!validate_1rm(fam))
    throw std::invalid_argument("reduce_1rm_to_lrmc: every coefficient must have rank one");
  const Field f = fam.field();

  AffineMatrixFamily cur = fam;
  std::size_t steps = 0;
  // target cell and scaling per source variable
  std::vector<CellReadback> readbacks;
  std::set<std::pair<std::size_t, std::size_t>> claimed;

  for (std::size_t t = 0; t < cur.terms().size(); ++t) {
    const Matrix& coeff = cur.terms()[t].coeff;
    const VarId var = cur.terms()[t].var;
    auto [v, w] = rank_one_factors(coeff, "reduce_1rm_to_lrmc");
    const std::size_t vi = single_nonzero_index(v);
    const std::size_t wj = single_nonzero_index(w);

    if (vi < v.size() && wj < w.size() && !claimed.count({vi, wj})) {
      // already a single entry; its cell becomes the unknown directly
      claimed.insert({vi, wj});
      readbacks.push_back({var, vi, wj, cur.base().at(vi, wj), coeff.at(vi, wj)});
      continue;
    }

    if (vi < v.size()) {
      // single nonzero row: one column step leaves entry 1 at (vi, cols)
      BorderStep step{};
      cur = border_column(cur, t, &step);
      ++steps;
      claimed.insert({vi, step.new_col});
      readbacks.push_back({var, vi, step.new_col, Scalar::zero(f), Scalar::one(f)});
      continue;
    }
    if (wj < w.size()) {
      // single nonzero column: one row step leaves entry 1 at (rows, wj)
      BorderStep step{};
      cur = border_row(cur, t, &step);
      ++steps;
      claimed.insert({step.new_row, wj});
      readbacks.push_back({var, step.new_row, wj, Scalar::zero(f), Scalar::one(f)});
      continue;
    }

    // general rank one: column step then row step
    BorderStep first{}, second{};
    cur = border_column(cur, t, &first);
    cur = border_row(cur, t, &second);
    steps += 2;
    claimed.insert({second.new_row, first.new_col});
    readbacks.push_back({var, second.new_row, first.new_col, Scalar::zero(f), Scalar::one(f)});
  }

  PartialMatrix out(f, cur.rows(), cur.cols());
  for (std::size_t i = 0; i < cur.rows(); ++i)
    for (std::size_t j = 0; j < cur.cols(); ++j) out.set_known(i, j, cur.base().at(i, j));
  for (const auto& rb : readbacks)
    out.set_unknown(rb.row, rb.col,
                    "fill." + std::to_string(rb.row) + "." + std::to_string(rb.col));

  Certificate cert;
  cert.offset = steps;
  cert.pullback = readbacks;
  return {std::move(out), std::move(cert)};
}

Assignment apply_cell_readback(const std::vector<CellReadback>& cells, const PartialMatrix& p,
                               const Assignment& fills) {
  Assignment out;
  for (const auto& rb : cells) {
    const Scalar completed = fills.get(p.unknown_at(rb.row, rb.col));
    out.set(rb.source_var, (completed - rb.base) / rb.coeff);
  }
  return out;
}

}  // namespace rankred
