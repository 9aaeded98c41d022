#pragma once

#include <cstddef>
#include <vector>

#include "rankred/matrix.hpp"

namespace rankred {

/// Dense order-d tensor (d >= 2), row-major with the last index fastest.
class Tensor {
 public:
  Tensor(const Field& f, std::vector<std::size_t> shape);
  static Tensor from_entries(const Field& f, std::vector<std::size_t> shape,
                             std::vector<Scalar> entries);
  static Tensor of_matrix(const Matrix& m);

  const Field& field() const { return field_; }
  std::size_t order() const { return shape_.size(); }
  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t dim(std::size_t mode) const { return shape_[mode]; }
  std::size_t size() const { return entries_.size(); }

  Scalar& entry(std::size_t flat) { return entries_[flat]; }
  const Scalar& entry(std::size_t flat) const { return entries_[flat]; }
  Scalar& at(const std::vector<std::size_t>& idx) { return entries_[flat_index(idx)]; }
  const Scalar& at(const std::vector<std::size_t>& idx) const {
    return entries_[flat_index(idx)];
  }
  std::size_t flat_index(const std::vector<std::size_t>& idx) const;

  /// The order-(d-1) slices S_1..S_{n_d} with T = sum_i S_i (x) e_i.
  /// Requires order >= 3.
  std::vector<Tensor> last_mode_slices() const;
  static Tensor stack_last_mode(const std::vector<Tensor>& slices);

  /// Row-major vectorization (the fixed linear isomorphism to F^(n_1...n_d)).
  Vec flatten() const { return entries_; }

  /// Order-2 view.
  Matrix as_matrix() const;

  /// n_mode x (prod of the other dims) matrix whose (i, :) row is the
  /// mode-fiber slice at index i, remaining indices row-major.
  Matrix mode_flattening(std::size_t mode) const;

  Tensor operator+(const Tensor& rhs) const;
  Tensor operator-(const Tensor& rhs) const;
  Tensor scaled(const Scalar& c) const;
  bool operator==(const Tensor& rhs) const;
  bool is_zero() const;

 private:
  Field field_;
  std::vector<std::size_t> shape_;
  std::vector<Scalar> entries_;
};

/// Outer product of one vector per mode.
struct PureTensor {
  std::vector<Vec> factors;

  Tensor densify() const;
  std::vector<std::size_t> shape() const;
};

Tensor sum_pure(const Field& f, const std::vector<std::size_t>& shape,
                const std::vector<PureTensor>& terms);

/// Factors of a rank-one tensor, if the tensor is rank one.
bool extract_pure(const Tensor& t, PureTensor& out);

}  // namespace rankred
