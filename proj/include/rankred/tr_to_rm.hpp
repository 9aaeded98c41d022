#pragma once

#include <functional>

#include "rankred/oracles.hpp"

namespace rankred {

/// Location of one pad block inside an assembled partial matrix, with its
/// fully known inner matrix.  The pad spans rows [row0, row0+n] and columns
/// [col0, col0+m]; the border cells are unknowns and the corner is 1.
struct PadBlockInfo {
  std::size_t row0 = 0, col0 = 0;
  Matrix inner;
};

/// pad(A) = [ A ? ; ? 1 ]: borders A with unknowns and a one so that the
/// minimal completion rank becomes max(1, rank A).
PartialMatrix pad(const Matrix& m);

/// K(n_1..n_d) = n_3 n_4...n_d + n_4...n_d + ... + n_d  (zero for d = 2).
/// Satisfies K(n_1..n_d) = n_d (K(n_1..n_{d-1}) + 1) for d >= 3.
std::size_t k_constant(const std::vector<std::size_t>& shape);

/// N(T): the (n_1...n_{d-1}) x n_d matrix whose column i is the flattened
/// slice S_i, where T = sum_i S_i (x) e_i.
Matrix slice_matrix(const Tensor& t);

/// Recursive padded encodings.  For order 2, A(T) = pad(T) and B(T) = T;
/// for higher order,
///   A(T) = diag(pad(N(T)), A(S_1), ..., A(S_{n_d}))
///   B(T) = diag(     N(T) , A(S_1), ..., A(S_{n_d}))
/// with mrank A(T) >= max(1, rank T) + K(shape) and
/// mrank B(T) >= rank T + K(shape), both with equality for rank T <= 1.
PartialMatrix build_a(const Tensor& t, std::vector<PadBlockInfo>* pads = nullptr);
PartialMatrix build_b(const Tensor& t, std::vector<PadBlockInfo>* pads = nullptr);

/// The constructive completion achieving max(1, rank inner) on every pad
/// block: fill the border column with the first nonzero column v of the
/// inner matrix and the border row with row_i(inner)/c for the first row
/// with inner(i, pivot column of v) = c != 0.  For rank <= 1 tensors this
/// completes build_a / build_b to their exact lemma values.
Assignment pad_completion_witness(const std::vector<PadBlockInfo>& pads);

/// The telescoping gadget C(U_1..U_k) = diag(B(T - U_1), B(U_1 - U_2), ...,
/// B(U_{k-1} - 0)): one B block per difference, every entry of the unknown
/// tensors U_1..U_{k-1} a variable, every pad cell a fresh fill variable.
/// For k >= rank T the minimum rank over all assignments is
/// rank T + k K(shape).
struct CGadget {
  AffineMatrixFamily family;
  Tensor source;
  std::size_t k = 0;
  std::size_t k_value = 0;  // K(shape)

  struct BlockSpan {
    std::size_t row0 = 0, col0 = 0, rows = 0, cols = 0;
  };
  std::vector<BlockSpan> blocks;

  /// Shared structure of every diagonal block as a function of its
  /// difference tensor: each cell is 0, 1, one difference entry, or a fill.
  struct Template {
    enum class Tag : std::uint8_t { zero, one, dvar, fill };
    std::size_t rows = 0, cols = 0;
    std::vector<Tag> tag;
    std::vector<std::uint32_t> dvar;  // flat difference index where tag == dvar
    std::size_t fill_count = 0;
  } tpl;

  static VarId u_var(std::size_t i, std::size_t flat);  // entry of U_i, i >= 1
  VarId fill_var(std::size_t block, std::size_t local_row, std::size_t local_col) const;
};

CGadget build_c(const Tensor& t, std::size_t k);

/// Exact minimum rank of the gadget family.  Exploits that the blocks are
/// diagonal with disjoint fill variables: tabulates the minimal completion
/// rank of one block per difference value (enumerating fills), then runs a
/// min-plus convolution over the k differences summing to T.  Deterministic
/// for every thread count; the witness re-evaluates to the minimum but is
/// not necessarily the lexicographically smallest one.
OracleResult mrank_c_gadget(const CGadget& g, const SearchBudget& budget = {}, int threads = 0);

using CGadgetSolver = std::function<OracleResult(const CGadget&)>;

/// rank T = (minimum rank of the gadget family) - k K(shape), valid for
/// k >= rank T.
std::size_t tensor_rank_via_c(const Tensor& t, std::size_t k, const CGadgetSolver& solver);

std::pair<CGadget, Certificate> reduce_tr_to_rm(const Tensor& t, std::size_t k);

}  // namespace rankred
