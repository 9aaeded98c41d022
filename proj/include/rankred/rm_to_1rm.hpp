#pragma once

#include "rankred/instances.hpp"

namespace rankred {

/// The gadget replacing one arbitrary-rank coefficient B (with decomposition
/// B = sum_i v_i w_i^t, r terms) by rank-one coefficients.  Block layout of
/// the gadget matrix, for input dimensions n x m:
///
///     [ E(x) | C_{1,2} C_{1,3} ... C_{r-1,r} ]      E      n x m
///     [  0   | D_{1,2}   0     ...     0     ]      C_{a,b} n x 2
///     [  0   |   0     D_{1,3} ...     0     ]      D_{a,b} 1 x 2
///     [  ... |                 ...           ]
///
/// E(x) = A + sum x_i v_i w_i^t,
/// C_{a,b} = [ (y_{a,b} - x_a) v_a , (y_{b,a} - x_b) v_b ],
/// D_{a,b} = [ y_{a,b} - z_{a,b} , y_{b,a} - z_{a,b} ].
///
/// Every coefficient matrix of the gadget family has rank one; the y
/// coefficients have a single nonzero column and the z coefficients a single
/// nonzero row.  The minimum rank over all gadget assignments equals
/// min_x rank(A + xB).
struct JGadget {
  AffineMatrixFamily family;
  std::vector<std::pair<Vec, Vec>> source_decomp;
  std::size_t n = 0, m = 0, r = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (a, b), a < b, block order
  RecoverXLevel recover;

  std::size_t c_block_col(std::size_t pair_index) const { return m + 2 * pair_index; }
  std::size_t d_block_row(std::size_t pair_index) const { return n + pair_index; }
};

/// Builds the gadget for min_x rank(A + xB).  Variables are named
/// x.<level>.<i>, y.<level>.<i>.<j>, z.<level>.<i>.<j>.  For B = 0 the
/// gadget degenerates to the family A + x.<level>.1 * 0.
JGadget build_j(const Matrix& a, const Matrix& b, std::size_t level = 1);

/// Picks x in {x_1..x_r} with rank J(assignment) >= rank(A + x B), following
/// the set Z of indices whose y/z rows deviate; smallest valid index wins.
Scalar recover_x(const JGadget& g, const Assignment& a);

/// Iterates the gadget over every term of the family (input order, zero
/// coefficients dropped), producing an equivalent family in which every
/// coefficient has rank one.  The minimum rank is preserved exactly
/// (certificate offset 0); the certificate pulls a gadget minimizer back to
/// source values, outermost level first.
std::pair<AffineMatrixFamily, Certificate> reduce_rm_to_1rm(const AffineMatrixFamily& fam);

/// Interprets a reduce_rm_to_1rm certificate: recovers one source value per
/// level from the reduced-instance assignment.  Levels with no gadget
/// variables (dropped zero coefficients) read back zero.
Assignment apply_recover_x_levels(const std::vector<RecoverXLevel>& levels, const Field& f,
                                  const Assignment& reduced);

}  // namespace rankred
