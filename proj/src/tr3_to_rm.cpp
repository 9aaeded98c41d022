#include "rankred/tr3_to_rm.hpp"

namespace rankred {

VarId EGadget::a_var(std::size_t i, std::size_t j) {
  return "a." + std::to_string(i) + "." + std::to_string(j);
}
VarId EGadget::b_var(std::size_t i, std::size_t j) {
  return "b." + std::to_string(i) + "." + std::to_string(j);
}
VarId EGadget::lam_var(std::size_t i, std::size_t j) {
  return "lam." + std::to_string(i) + "." + std::to_string(j);
}

std::size_t default_e_budget(std::size_t p, std::size_t q, std::size_t r) {
  return std::min({p * q, p * r, q * r});
}

EGadget build_e(const Tensor& t, std::size_t k) {
  if (t.order() != 3) throw std::invalid_argument("build_e: tensor order must be 3");
  if (k == 0) throw std::invalid_argument("build_e: k must be positive");
  const Field f = t.field();
  const std::size_t p = t.dim(0), q = t.dim(1), r = t.dim(2);

  EGadget g;
  g.p = p;
  g.q = q;
  g.r = r;
  g.k = k;
  for (const Tensor& s : t.last_mode_slices()) g.slices.push_back(s.as_matrix());

  const std::size_t rows = (p + 2 * k) * r + (p + q) * k;
  const std::size_t cols = (q + 2 * k) * r + k;

  Matrix base(f, rows, cols);
  for (std::size_t i = 0; i < r; ++i) {
    base.paste(g.slices[i], g.c_row(i), g.c_col(i));
    for (std::size_t d = 0; d < k; ++d) {
      base.at(g.c_row(i) + p + d, g.c_col(i) + q + d) = Scalar::one(f);
      base.at(g.c_row(i) + p + k + d, g.c_col(i) + q + k + d) = Scalar::one(f);
    }
  }

  std::vector<FamilyTerm> terms;
  for (std::size_t i = 1; i <= p; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      Matrix coeff(f, rows, cols);
      for (std::size_t blk = 0; blk < r; ++blk)
        coeff.at(g.c_row(blk) + i - 1, g.c_col(blk) + q + j - 1) = Scalar::one(f);
      coeff.at(g.d_row(j - 1) + i - 1, g.d_col(j - 1)) = Scalar::one(f);
      terms.push_back({EGadget::a_var(i, j), std::move(coeff)});
    }
  for (std::size_t i = 1; i <= q; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      Matrix coeff(f, rows, cols);
      for (std::size_t blk = 0; blk < r; ++blk)
        coeff.at(g.c_row(blk) + p + k + j - 1, g.c_col(blk) + i - 1) = Scalar::one(f);
      coeff.at(g.d_row(j - 1) + p + i - 1, g.d_col(j - 1)) = Scalar::one(f);
      terms.push_back({EGadget::b_var(i, j), std::move(coeff)});
    }
  for (std::size_t i = 1; i <= r; ++i)
    for (std::size_t j = 1; j <= k; ++j) {
      Matrix coeff(f, rows, cols);
      coeff.at(g.c_row(i - 1) + p + j - 1, g.c_col(i - 1) + q + k + j - 1) = -Scalar::one(f);
      terms.push_back({EGadget::lam_var(i, j), std::move(coeff)});
    }

  g.family = AffineMatrixFamily(std::move(base), std::move(terms));
  return g;
}

bool block_rank_identity_check(const Matrix& s, const Matrix& a, const Matrix& b,
                               const Vec& lambda) {
  const Field f = s.field();
  const std::size_t p = s.rows(), q = s.cols(), k = a.cols();
  if (a.rows() != p || b.rows() != q || b.cols() != k || lambda.size() != k)
    throw std::invalid_argument("block_rank_identity_check: dimension mismatch");

  Matrix c(f, p + 2 * k, q + 2 * k);
  c.paste(s, 0, 0);
  c.paste(a, 0, q);
  for (std::size_t d = 0; d < k; ++d) {
    c.at(p + d, q + d) = Scalar::one(f);
    c.at(p + d, q + k + d) = -lambda[d];
    c.at(p + k + d, q + k + d) = Scalar::one(f);
  }
  c.paste(b.transpose(), p + k, 0);

  Matrix residual = s;
  for (std::size_t j = 0; j < k; ++j)
    residual = residual - Matrix::outer(a.col(j), b.col(j)).scaled(lambda[j]);
  return c.rank() == 2 * k + residual.rank();
}

std::vector<PureTensor> recover_decomposition(const EGadget& g, const Assignment& a) {
  const Field f = g.family.field();

  std::vector<Vec> a_cols, b_cols;
  for (std::size_t j = 1; j <= g.k; ++j) {
    Vec aj, bj;
    for (std::size_t i = 1; i <= g.p; ++i) aj.push_back(a.get(EGadget::a_var(i, j)));
    for (std::size_t i = 1; i <= g.q; ++i) bj.push_back(a.get(EGadget::b_var(i, j)));
    a_cols.push_back(std::move(aj));
    b_cols.push_back(std::move(bj));
  }

  std::vector<PureTensor> out;
  for (std::size_t i = 1; i <= g.r; ++i) {
    Matrix u = g.slices[i - 1];
    for (std::size_t j = 1; j <= g.k; ++j) {
      const Scalar lam = a.get(EGadget::lam_var(i, j));
      if (!lam.is_zero())
        u = u - Matrix::outer(a_cols[j - 1], b_cols[j - 1]).scaled(lam);
    }
    for (const auto& [vv, ww] : u.rank_one_decompose()) {
      Vec ei(g.r, Scalar::zero(f));
      ei[i - 1] = Scalar::one(f);
      out.push_back(PureTensor{{vv, ww, ei}});
    }
  }
  for (std::size_t j = 1; j <= g.k; ++j) {
    const bool a_zero = vec_is_zero(a_cols[j - 1]);
    const bool b_zero = vec_is_zero(b_cols[j - 1]);
    if (a_zero || b_zero) continue;
    Vec c(g.r, Scalar::zero(f));
    for (std::size_t i = 1; i <= g.r; ++i) c[i - 1] = a.get(EGadget::lam_var(i, j));
    out.push_back(PureTensor{{a_cols[j - 1], b_cols[j - 1], c}});
  }

  const std::size_t rank_e = g.family.evaluate(a).rank();
  if (out.size() != rank_e - 2 * g.k * g.r)
    throw std::invalid_argument(
        "recover_decomposition: term count disagrees with rank E - 2kr; assignment is not "
        "minimal");
  return out;
}

std::pair<std::size_t, std::vector<PureTensor>> tensor_rank_via_rm(
    const Tensor& t, const MinRankSolver& solver, std::optional<std::size_t> k) {
  const std::size_t budget =
      k.value_or(default_e_budget(t.dim(0), t.dim(1), t.dim(2)));
  EGadget g = build_e(t, budget);
  OracleResult res = solver(g.family);
  const std::size_t rank_t = res.minimum - 2 * budget * t.dim(2);
  std::vector<PureTensor> decomp = recover_decomposition(g, res.witness);
  if (!(sum_pure(t.field(), t.shape(), decomp) == t))
    throw std::logic_error("tensor_rank_via_rm: recovered decomposition does not sum to T");
  return {rank_t, std::move(decomp)};
}

std::pair<EGadget, Certificate> reduce_3tr_to_rm(const Tensor& t, std::optional<std::size_t> k) {
  const std::size_t budget =
      k.value_or(default_e_budget(t.dim(0), t.dim(1), t.dim(2)));
  EGadget g = build_e(t, budget);
  Certificate cert;
  cert.offset = 2 * budget * t.dim(2);
  cert.pullback = EGadgetPullback{g.p, g.q, g.r, g.k};
  return {std::move(g), std::move(cert)};
}

}  // namespace rankred
