#pragma once

#include <functional>

#include "rankred/oracles.hpp"

namespace rankred {

/// Rank-minimization encoding of an order-3 tensor rank query.  For
/// T in F^p (x) F^q (x) F^r with slices S_1..S_r and a column budget k, the
/// gadget matrix is block diagonal:
///
///   E = diag(C_1, ..., C_r, D_1, ..., D_k)
///
///   C_i = [ S_i  A    0   ]  (p+2k) x (q+2k)     D_j = [ a_j ]  (p+q) x 1
///         [ 0    I_k -L_i ]                            [ b_j ]
///         [ B^t  0    I_k ]
///
/// with A (p x k), B (q x k) and the diagonals L_i made of indeterminates.
/// rank C_i = 2k + rank(S_i - sum_j lambda_{i,j} a_j b_j^t), and for
/// k >= rank T the whole family has minimum rank 2kr + rank T.
struct EGadget {
  AffineMatrixFamily family;
  std::size_t p = 0, q = 0, r = 0, k = 0;
  std::vector<Matrix> slices;

  std::size_t c_row(std::size_t i) const { return i * (p + 2 * k); }          // i in [0, r)
  std::size_t c_col(std::size_t i) const { return i * (q + 2 * k); }
  std::size_t d_row(std::size_t j) const { return r * (p + 2 * k) + j * (p + q); }
  std::size_t d_col(std::size_t j) const { return r * (q + 2 * k) + j; }

  static VarId a_var(std::size_t i, std::size_t j);    // 1-based
  static VarId b_var(std::size_t i, std::size_t j);
  static VarId lam_var(std::size_t i, std::size_t j);
};

/// The default column budget min(pq, pr, qr), a valid upper bound for the
/// rank of any (p, q, r) tensor.
std::size_t default_e_budget(std::size_t p, std::size_t q, std::size_t r);

EGadget build_e(const Tensor& t, std::size_t k);

/// Checks rank C = 2k + rank(S - A Lambda B^t) on concrete values.
bool block_rank_identity_check(const Matrix& s, const Matrix& a, const Matrix& b,
                               const Vec& lambda);

/// Reads the pure-tensor decomposition out of a minimum-rank assignment:
/// rank-one pieces of each residual U_i = S_i - sum_j lambda_{i,j} a_j b_j^t
/// lifted along e_i, plus a_j b_j^t (x) (sum_i lambda_{i,j} e_i) for every j
/// with a_j and b_j both nonzero.  Throws if the term count disagrees with
/// rank E(assignment) - 2kr, which flags a non-minimal assignment.
std::vector<PureTensor> recover_decomposition(const EGadget& g, const Assignment& a);

using MinRankSolver = std::function<OracleResult(const AffineMatrixFamily&)>;

/// Solves the gadget family and converts back: rank T = min rank E - 2kr,
/// with the decomposition recovered from the witness.
std::pair<std::size_t, std::vector<PureTensor>> tensor_rank_via_rm(
    const Tensor& t, const MinRankSolver& solver,
    std::optional<std::size_t> k = std::nullopt);

std::pair<EGadget, Certificate> reduce_3tr_to_rm(const Tensor& t,
                                                 std::optional<std::size_t> k = std::nullopt);

}  // namespace rankred
