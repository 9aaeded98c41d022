#include "rankred/rm1_to_3tr.hpp"

namespace rankred {

Scalar LinearFunctional::apply(const Vec& v) const {
  if (v.size() != coefficients.size())
    throw std::invalid_argument("LinearFunctional: length mismatch");
  Scalar acc = Scalar::zero(coefficients.front().field());
  for (std::size_t i = 0; i < v.size(); ++i) acc += coefficients[i] * v[i];
  return acc;
}

StackedTensor build_stacked_tensor(const AffineMatrixFamily& fam) {
  const Field f = fam.field();
  const std::size_t n = fam.rows(), m = fam.cols(), s = fam.terms().size();

  std::vector<std::pair<Vec, Vec>> factor_pairs;
  std::vector<Vec> flats;
  for (const auto& t : fam.terms()) {
    auto decomp = t.coeff.rank_one_decompose();
    if (decomp.size() != 1)
      throw std::invalid_argument("build_stacked_tensor: coefficient of '" + t.var +
                                  "' is not rank one");
    factor_pairs.push_back(decomp.front());
    Vec flat;
    flat.reserve(n * m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) flat.push_back(t.coeff.at(i, j));
    flats.push_back(std::move(flat));
  }
  if (span_rank(f, flats) != s)
    throw std::invalid_argument("build_stacked_tensor: coefficients are linearly dependent");

  // independence witness: pivot positions from elimination over the flats
  std::vector<std::size_t> basis;
  {
    Matrix w(f, s, n * m);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < n * m; ++j) w.at(i, j) = flats[i][j];
    std::size_t row = 0;
    for (std::size_t c = 0; c < n * m && row < s; ++c) {
      std::size_t pivot = s;
      for (std::size_t i = row; i < s; ++i)
        if (!w.at(i, c).is_zero()) {
          pivot = i;
          break;
        }
      if (pivot == s) continue;
      if (pivot != row)
        for (std::size_t j = 0; j < n * m; ++j) std::swap(w.at(row, j), w.at(pivot, j));
      const Scalar inv = w.at(row, c).inverse();
      for (std::size_t i = row + 1; i < s; ++i) {
        const Scalar factor = w.at(i, c) * inv;
        if (factor.is_zero()) continue;
        for (std::size_t j = c; j < n * m; ++j) w.at(i, j) -= factor * w.at(row, j);
      }
      basis.push_back(c);
      ++row;
    }
  }

  Tensor tensor(f, {n, m, s + 1});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      tensor.at({i, j, s}) = fam.base().at(i, j);
      for (std::size_t k = 0; k < s; ++k) tensor.at({i, j, k}) = fam.terms()[k].coeff.at(i, j);
    }

  return StackedTensor{std::move(tensor), fam, std::move(factor_pairs), std::move(basis)};
}

std::size_t min_rank_from_tensor_rank(const StackedTensor& t, std::size_t tensor_rank) {
  const std::size_t s = t.source.terms().size();
  if (tensor_rank < s)
    throw std::invalid_argument(
        "min_rank_from_tensor_rank: claimed tensor rank is below the slice count");
  return tensor_rank - s;
}

namespace {

/// Solves R f = e_last for the functional coefficients, R the (s+1)x(s+1)
/// matrix whose rows are the selected c vectors and e_{s+1}.
LinearFunctional functional_for_basis(const Field& f, const std::vector<Vec>& selected) {
  const std::size_t dim = selected.size();
  Matrix aug(f, dim, dim + 1);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) aug.at(i, j) = selected[i][j];
  aug.at(dim - 1, dim) = Scalar::one(f);

  // forward elimination with full back substitution
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t pivot = dim;
    for (std::size_t i = c; i < dim; ++i)
      if (!aug.at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    if (pivot == dim) throw std::logic_error("functional_for_basis: singular basis matrix");
    if (pivot != c)
      for (std::size_t j = 0; j <= dim; ++j) std::swap(aug.at(c, j), aug.at(pivot, j));
    const Scalar inv = aug.at(c, c).inverse();
    for (std::size_t j = 0; j <= dim; ++j) aug.at(c, j) = aug.at(c, j) * inv;
    for (std::size_t i = 0; i < dim; ++i) {
      if (i == c || aug.at(i, c).is_zero()) continue;
      const Scalar factor = aug.at(i, c);
      for (std::size_t j = 0; j <= dim; ++j) aug.at(i, j) -= factor * aug.at(c, j);
    }
  }
  LinearFunctional fn;
  for (std::size_t i = 0; i < dim; ++i) fn.coefficients.push_back(aug.at(i, dim));
  return fn;
}

}  // namespace

std::pair<Assignment, std::vector<std::pair<Vec, Vec>>> recover_minimizer(
    const StackedTensor& t, const std::vector<PureTensor>& decomposition) {
  const Field f = t.tensor.field();
  const std::size_t s = t.source.terms().size();

  if (!(sum_pure(f, t.tensor.shape(), decomposition) == t.tensor))
    throw std::invalid_argument("recover_minimizer: decomposition does not sum to the tensor");

  Vec e_last(s + 1, Scalar::zero(f));
  e_last[s] = Scalar::one(f);

  // greedy: grow a basis starting from e_{s+1}, taking c_j in order
  std::vector<Vec> span_set = {e_last};
  std::vector<std::size_t> selected;
  for (std::size_t j = 0; j < decomposition.size() && selected.size() < s; ++j) {
    const Vec& c = decomposition[j].factors.back();
    span_set.push_back(c);
    if (span_rank(f, span_set) == span_set.size()) {
      selected.push_back(j);
    } else {
      span_set.pop_back();
    }
  }
  if (selected.size() != s)
    throw std::invalid_argument(
        "recover_minimizer: c vectors plus e_{s+1} do not span; decomposition cannot be minimal");

  std::vector<Vec> basis_rows;
  for (std::size_t j : selected) basis_rows.push_back(decomposition[j].factors.back());
  basis_rows.push_back(e_last);
  const LinearFunctional fn = functional_for_basis(f, basis_rows);

  Assignment xs;
  for (std::size_t k = 0; k < s; ++k) {
    Vec ek(s + 1, Scalar::zero(f));
    ek[k] = Scalar::one(f);
    xs.set(t.source.terms()[k].var, fn.apply(ek));
  }

  std::vector<std::pair<Vec, Vec>> residual;
  for (std::size_t j = 0; j < decomposition.size(); ++j) {
    if (std::find(selected.begin(), selected.end(), j) != selected.end()) continue;
    const Scalar weight = fn.apply(decomposition[j].factors.back());
    residual.emplace_back(vec_scaled(decomposition[j].factors[0], weight),
                          decomposition[j].factors[1]);
  }
  return {std::move(xs), std::move(residual)};
}

std::vector<PureTensor> upper_bound_decomposition(const StackedTensor& t, const Assignment& a) {
  const Field f = t.tensor.field();
  const std::size_t s = t.source.terms().size();
  std::vector<PureTensor> out;

  const Matrix evaluated = t.source.evaluate(a);
  for (const auto& [v, w] : evaluated.rank_one_decompose()) {
    Vec e_last(s + 1, Scalar::zero(f));
    e_last[s] = Scalar::one(f);
    out.push_back(PureTensor{{v, w, e_last}});
  }
  for (std::size_t k = 0; k < s; ++k) {
    Vec c(s + 1, Scalar::zero(f));
    c[k] = Scalar::one(f);
    c[s] = -a.get(t.source.terms()[k].var);
    out.push_back(PureTensor{{t.factor_pairs[k].first, t.factor_pairs[k].second, c}});
  }
  return out;
}

Tensor build_stacked_tensor_completion(const Tensor& a, const std::vector<PureTensor>& b_list) {
  const Field f = a.field();
  const std::size_t s = b_list.size();

  std::vector<Vec> flats;
  std::vector<Tensor> dense;
  for (const auto& b : b_list) {
    if (b.shape() != a.shape())
      throw std::invalid_argument("build_stacked_tensor_completion: shape mismatch");
    dense.push_back(b.densify());
    flats.push_back(dense.back().flatten());
  }
  if (span_rank(f, flats) != s)
    throw std::invalid_argument("build_stacked_tensor_completion: pure terms are dependent");

  std::vector<std::size_t> shape = a.shape();
  shape.push_back(s + 1);
  Tensor t(f, shape);
  const std::size_t inner = a.size();
  for (std::size_t k = 0; k < inner; ++k) {
    t.entry(k * (s + 1) + s) = a.entry(k);
    for (std::size_t b = 0; b < s; ++b) t.entry(k * (s + 1) + b) = dense[b].entry(k);
  }
  return t;
}

Assignment apply_stacked_pullback(const StackedPullback& pb, const StackedTensor& t,
                                  const std::vector<PureTensor>& decomposition) {
  auto [xs, residual] = recover_minimizer(t, decomposition);
  (void)residual;
  Assignment out;
  for (const auto& var : pb.source_vars) out.set(var, xs.get(var));
  return out;
}

std::pair<StackedTensor, Certificate> reduce_1rm_to_3tr(const AffineMatrixFamily& fam) {
  StackedTensor st = build_stacked_tensor(fam);
  Certificate cert;
  cert.offset = fam.terms().size();
  StackedPullback pb;
  for (const auto& t : fam.terms()) pb.source_vars.push_back(t.var);
  cert.pullback = pb;
  return {std::move(st), std::move(cert)};
}

}  // namespace rankred
