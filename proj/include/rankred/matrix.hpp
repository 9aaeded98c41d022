#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rankred/field.hpp"

namespace rankred {

using Vec = std::vector<Scalar>;

bool vec_is_zero(const Vec& v);
Vec vec_scaled(const Vec& v, const Scalar& c);

/// Dense exact matrix, row-major.  Immutable by convention once built; the
/// mutating accessors exist for construction code.
class Matrix {
 public:
  Matrix(const Field& f, std::size_t rows, std::size_t cols);

  static Matrix identity(const Field& f, std::size_t n);
  static Matrix from_rows(const Field& f, const std::vector<std::vector<Scalar>>& rows);
  /// v w^t
  static Matrix outer(const Vec& v, const Vec& w);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;

  Matrix transpose() const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(const Scalar& c) const;
  bool operator==(const Matrix& rhs) const;
  bool is_zero() const;

  /// Copies this matrix into the top-left corner of a new_rows x new_cols
  /// zero matrix.
  Matrix zero_extended(std::size_t new_rows, std::size_t new_cols) const;
  void paste(const Matrix& block, std::size_t r0, std::size_t c0);

  std::size_t nonzero_count() const;
  /// {row, col} of the first nonzero entry in row-major order, if any.
  bool first_nonzero(std::size_t& i, std::size_t& j) const;

  /// Exact rank via Gaussian elimination, first-nonzero pivoting.
  std::size_t rank() const;

  /// Writes B as sum of exactly rank(B) outer products v_i w_i^t.
  /// Deterministic: pivot at the first nonzero entry (i, j) in row-major
  /// order, take v = column j / pivot and w = row i, subtract, repeat.
  std::vector<std::pair<Vec, Vec>> rank_one_decompose() const;

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> entries_;
};

/// Rank of the span of a list of equal-length vectors.
std::size_t span_rank(const Field& f, const std::vector<Vec>& vectors);

}  // namespace rankred
