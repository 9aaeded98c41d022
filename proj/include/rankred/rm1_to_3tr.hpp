#pragma once

#include "rankred/instances.hpp"

namespace rankred {

/// Linear functional on F^(s+1), built so it vanishes on a chosen basis part
/// and takes value 1 on the last coordinate vector.
struct LinearFunctional {
  Vec coefficients;

  Scalar apply(const Vec& v) const;
};

/// The order-3 tensor T = A (x) e_{s+1} + sum_k B_k (x) e_k of shape
/// (n, m, s+1): slice k <= s holds the rank-one coefficient B_k, the last
/// slice holds the base A.  rank(T) = s + min-rank of the family.
struct StackedTensor {
  Tensor tensor;
  AffineMatrixFamily source;
  std::vector<std::pair<Vec, Vec>> factor_pairs;      // (v_k, w_k) with B_k = v_k w_k^t
  std::vector<std::size_t> independence_basis;        // pivot flat positions, one per B_k
};

/// Requires rank-one, linearly independent coefficients.
StackedTensor build_stacked_tensor(const AffineMatrixFamily& fam);

/// The minimum of rank(A + sum x_k B_k) given rank(T) = tensor_rank.
std::size_t min_rank_from_tensor_rank(const StackedTensor& t, std::size_t tensor_rank);

/// From a minimal decomposition of the stacked tensor, rebuilds the
/// minimizing assignment x_k = f(e_k) and the rank-(l-s) matrix
/// decomposition sum f(c_j) a_j b_j^t of the minimized family member.
std::pair<Assignment, std::vector<std::pair<Vec, Vec>>> recover_minimizer(
    const StackedTensor& t, const std::vector<PureTensor>& decomposition);

/// The constructive converse: an assignment with rank(A + sum x_k B_k) = r
/// yields r + s pure tensors summing to the stacked tensor.
std::vector<PureTensor> upper_bound_decomposition(const StackedTensor& t, const Assignment& a);

/// Order-d generalization (tensor completion): A of any order, pure
/// linearly independent B_k, output of order d+1 with
/// min_x rank(A + sum x_k B_k) = rank(T) - s.
Tensor build_stacked_tensor_completion(const Tensor& a, const std::vector<PureTensor>& b_list);

/// build_stacked_tensor plus the certificate: offset s, pullback through
/// recover_minimizer.
std::pair<StackedTensor, Certificate> reduce_1rm_to_3tr(const AffineMatrixFamily& fam);

}  // namespace rankred
