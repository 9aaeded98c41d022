#include "rankred/matrix.hpp"

#include <stdexcept>

namespace rankred {

bool vec_is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec vec_scaled(const Vec& v, const Scalar& c) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x * c);
  return out;
}

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
  return m;
}

Matrix Matrix::from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw std::invalid_argument("Matrix::from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Matrix Matrix::outer(const Vec& v, const Vec& w) {
  if (v.empty()) throw std::invalid_argument("Matrix::outer: empty vector");
  Matrix m(v.front().field(), v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m.at(i, j) = v[i] * w[j];
  return m;
}

Vec Matrix::row(std::size_t i) const {
  Vec out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(at(i, j));
  return out;
}

Vec Matrix::col(std::size_t j) const {
  Vec out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(at(i, j));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix m(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("Matrix::operator+: shape mismatch");
  Matrix m = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] += rhs.entries_[k];
  return m;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("Matrix::operator-: shape mismatch");
  Matrix m = *this;
  for (std::size_t k = 0; k < entries_.size(); ++k) m.entries_[k] -= rhs.entries_[k];
  return m;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix m = *this;
  for (auto& x : m.entries_) x = x * c;
  return m;
}

bool Matrix::operator==(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || !(field_ == rhs.field_)) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k)
    if (entries_[k] != rhs.entries_[k]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& x : entries_)
    if (!x.is_zero()) return false;
  return true;
}

Matrix Matrix::zero_extended(std::size_t new_rows, std::size_t new_cols) const {
  if (new_rows < rows_ || new_cols < cols_)
    throw std::invalid_argument("Matrix::zero_extended: target smaller than source");
  Matrix m(field_, new_rows, new_cols);
  m.paste(*this, 0, 0);
  return m;
}

void Matrix::paste(const Matrix& block, std::size_t r0, std::size_t c0) {
  if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
    throw std::invalid_argument("Matrix::paste: block out of range");
  for (std::size_t i = 0; i < block.rows_; ++i)
    for (std::size_t j = 0; j < block.cols_; ++j) at(r0 + i, c0 + j) = block.at(i, j);
}

std::size_t Matrix::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& x : entries_)
    if (!x.is_zero()) ++n;
  return n;
}

bool Matrix::first_nonzero(std::size_t& i, std::size_t& j) const {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!entries_[k].is_zero()) {
      i = k / cols_;
      j = k % cols_;
      return true;
    }
  }
  return false;
}

std::size_t Matrix::rank() const {
  Matrix work = *this;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t pivot = rows_;
    for (std::size_t i = r; i < rows_; ++i) {
      if (!work.at(i, c).is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows_) continue;
    if (pivot != r)
      for (std::size_t j = c; j < cols_; ++j) std::swap(work.at(r, j), work.at(pivot, j));
    const Scalar inv = work.at(r, c).inverse();
    for (std::size_t i = r + 1; i < rows_; ++i) {
      if (work.at(i, c).is_zero()) continue;
      const Scalar factor = work.at(i, c) * inv;
      for (std::size_t j = c; j < cols_; ++j)
        work.at(i, j) -= factor * work.at(r, j);
    }
    ++r;
  }
  return r;
}

std::vector<std::pair<Vec, Vec>> Matrix::rank_one_decompose() const {
  std::vector<std::pair<Vec, Vec>> terms;
  Matrix residual = *this;
  std::size_t i, j;
  while (residual.first_nonzero(i, j)) {
    const Scalar pivot_inv = residual.at(i, j).inverse();
    Vec v = vec_scaled(residual.col(j), pivot_inv);
    Vec w = residual.row(i);
    residual = residual - Matrix::outer(v, w);
    terms.emplace_back(std::move(v), std::move(w));
  }
  return terms;
}

std::size_t span_rank(const Field& f, const std::vector<Vec>& vectors) {
  if (vectors.empty()) return 0;
  Matrix m(f, vectors.size(), vectors.front().size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != vectors.front().size())
      throw std::invalid_argument("span_rank: length mismatch");
    for (std::size_t j = 0; j < vectors[i].size(); ++j) m.at(i, j) = vectors[i][j];
  }
  return m.rank();
}

}  // namespace rankred
