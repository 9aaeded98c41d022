#include "rankred/tensor.hpp"

#include <numeric>
#include <stdexcept>

namespace rankred {

namespace {

std::size_t shape_product(const std::vector<std::size_t>& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

}  // namespace

Tensor::Tensor(const Field& f, std::vector<std::size_t> shape)
    : field_(f), shape_(std::move(shape)),
      entries_(shape_product(shape_), Scalar::zero(f)) {
  if (shape_.size() < 2) throw std::invalid_argument("Tensor: order must be >= 2");
  for (std::size_t d : shape_)
    if (d == 0) throw std::invalid_argument("Tensor: zero-length mode");
}

Tensor Tensor::from_entries(const Field& f, std::vector<std::size_t> shape,
                            std::vector<Scalar> entries) {
  Tensor t(f, std::move(shape));
  if (entries.size() != t.entries_.size())
    throw std::invalid_argument("Tensor::from_entries: entry count mismatch");
  for (const auto& x : entries)
    if (!(x.field() == f)) throw FieldMismatch("Tensor::from_entries: field mismatch");
  t.entries_ = std::move(entries);
  return t;
}

Tensor Tensor::of_matrix(const Matrix& m) {
  Tensor t(m.field(), {m.rows(), m.cols()});
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.entries_[i * m.cols() + j] = m.at(i, j);
  return t;
}

std::size_t Tensor::flat_index(const std::vector<std::size_t>& idx) const {
  if (idx.size() != shape_.size()) throw std::invalid_argument("Tensor: index arity mismatch");
  std::size_t flat = 0;
  for (std::size_t m = 0; m < shape_.size(); ++m) {
    if (idx[m] >= shape_[m]) throw std::out_of_range("Tensor: index out of range");
    flat = flat * shape_[m] + idx[m];
  }
  return flat;
}

std::vector<Tensor> Tensor::last_mode_slices() const {
  if (order() < 3)
    throw std::invalid_argument("Tensor::last_mode_slices: order must be >= 3");
  const std::size_t nd = shape_.back();
  std::vector<std::size_t> slice_shape(shape_.begin(), shape_.end() - 1);
  const std::size_t slice_size = shape_product(slice_shape);
  std::vector<Tensor> slices;
  slices.reserve(nd);
  for (std::size_t i = 0; i < nd; ++i) {
    Tensor s(field_, slice_shape);
    for (std::size_t k = 0; k < slice_size; ++k) s.entries_[k] = entries_[k * nd + i];
    slices.push_back(std::move(s));
  }
  return slices;
}

Tensor Tensor::stack_last_mode(const std::vector<Tensor>& slices) {
  if (slices.empty()) throw std::invalid_argument("Tensor::stack_last_mode: no slices");
  std::vector<std::size_t> shape = slices.front().shape_;
  shape.push_back(slices.size());
  Tensor t(slices.front().field_, shape);
  const std::size_t nd = slices.size();
  for (std::size_t i = 0; i < nd; ++i) {
    if (slices[i].shape_ != slices.front().shape_)
      throw std::invalid_argument("Tensor::stack_last_mode: shape mismatch");
    for (std::size_t k = 0; k < slices[i].entries_.size(); ++k)
      t.entries_[k * nd + i] = slices[i].entries_[k];
  }
  return t;
}

Matrix Tensor::as_matrix() const {
  if (order() != 2) throw std::invalid_argument("Tensor::as_matrix: order != 2");
  Matrix m(field_, shape_[0], shape_[1]);
  for (std::size_t i = 0; i < shape_[0]; ++i)
    for (std::size_t j = 0; j < shape_[1]; ++j) m.at(i, j) = entries_[i * shape_[1] + j];
  return m;
}

Matrix Tensor::mode_flattening(std::size_t mode) const {
  if (mode >= order()) throw std::out_of_range("Tensor::mode_flattening: bad mode");
  const std::size_t n = shape_[mode];
  const std::size_t rest = entries_.size() / n;
  Matrix m(field_, n, rest);
  // stride of the chosen mode in the row-major layout
  std::size_t stride = 1;
  for (std::size_t k = mode + 1; k < order(); ++k) stride *= shape_[k];
  std::size_t col = 0;
  for (std::size_t outer = 0; outer < entries_.size() / (stride * n); ++outer) {
    for (std::size_t inner = 0; inner < stride; ++inner, ++col) {
      const std::size_t base = outer * stride * n + inner;
      for (std::size_t i = 0; i < n; ++i) m.at(i, col) = entries_[base + i * stride];
    }
  }
  return m;
}

Tensor Tensor::operator+(const Tensor& rhs) const {
  if (shape_ != rhs.shape_) throw std::invalid_argument("Tensor::operator+: shape mismatch");
  Tensor t = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) t.entries_[k] += rhs.entries_[k];
  return t;
}

Tensor Tensor::operator-(const Tensor& rhs) const {
  if (shape_ != rhs.shape_) throw std::invalid_argument("Tensor::operator-: shape mismatch");
  Tensor t = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) t.entries_[k] -= rhs.entries_[k];
  return t;
}

Tensor Tensor::scaled(const Scalar& c) const {
  Tensor t = *this;
  for (auto& x : t.entries_) x = x * c;
  return t;
}

bool Tensor::operator==(const Tensor& rhs) const {
  if (shape_ != rhs.shape_ || !(field_ == rhs.field_)) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    if (entries_[k] != rhs.entries_[k]) return false;
  return true;
}

bool Tensor::is_zero() const {
  for (const auto& x : entries_)
    if (!x.is_zero()) return false;
  return true;
}

Tensor PureTensor::densify() const {
  if (factors.size() < 2) throw std::invalid_argument("PureTensor: order must be >= 2");
  const Field f = factors.front().front().field();
  Tensor t(f, shape());
  const std::size_t n = t.size();
  std::vector<std::size_t> idx(factors.size(), 0);
  for (std::size_t flat = 0; flat < n; ++flat) {
    std::size_t rem = flat;
    Scalar prod = Scalar::one(f);
    for (std::size_t m = factors.size(); m-- > 0;) {
      idx[m] = rem % factors[m].size();
      rem /= factors[m].size();
    }
    for (std::size_t m = 0; m < factors.size(); ++m) prod = prod * factors[m][idx[m]];
    t.entry(flat) = prod;
  }
  return t;
}

std::vector<std::size_t> PureTensor::shape() const {
  std::vector<std::size_t> s;
  s.reserve(factors.size());
  for (const auto& v : factors) s.push_back(v.size());
  return s;
}

Tensor sum_pure(const Field& f, const std::vector<std::size_t>& shape,
                const std::vector<PureTensor>& terms) {
  Tensor acc(f, shape);
  for (const auto& t : terms) acc = acc + t.densify();
  return acc;
}

bool extract_pure(const Tensor& t, PureTensor& out) {
  if (t.is_zero()) return false;
  out.factors.clear();
  Tensor rest = t;
  while (rest.order() > 2) {
    Matrix m = rest.mode_flattening(0);
    if (m.rank() != 1) return false;
    auto decomp = m.rank_one_decompose();
    out.factors.push_back(decomp.front().first);
    std::vector<std::size_t> tail_shape(rest.shape().begin() + 1, rest.shape().end());
    rest = Tensor::from_entries(t.field(), tail_shape, decomp.front().second);
  }
  Matrix m = rest.as_matrix();
  if (m.rank() != 1) return false;
  auto decomp = m.rank_one_decompose();
  out.factors.push_back(decomp.front().first);
  out.factors.push_back(decomp.front().second);
  return true;
}

}  // namespace rankred
