#pragma once

#include "rankred/instances.hpp"

namespace rankred {

/// One bordering step on a rank-one term B = v w^t.
///
/// column step:  A' = [ A  0 ]      B' = [ 0  v ]   (v = pivot column / pivot)
///               [ w^t -1 ]             [ 0  0 ]
///
/// row step:     A'' = [ A  v ]     B'' = [  0   0 ]  (w = pivot row / pivot)
///               [ 0  -1 ]              [ w^t  0 ]
///
/// Either step raises the rank of every member of the family by exactly one.
struct BorderStep {
  enum class Kind { column, row } kind;
  Vec v, w;
  std::size_t new_row, new_col;  // position of the fresh single-entry coefficient
};

/// Appends one row and one column so the selected rank-one term's coefficient
/// becomes a matrix with a single nonzero column (the column variant) or a
/// single nonzero row (the row variant).  Throws if the term is not rank one.
AffineMatrixFamily border_column(const AffineMatrixFamily& fam, std::size_t term_index,
                                 BorderStep* step = nullptr);
AffineMatrixFamily border_row(const AffineMatrixFamily& fam, std::size_t term_index,
                              BorderStep* step = nullptr);

/// Reduces a family with rank-one coefficients to a matrix completion
/// instance.  Per term: a single-entry coefficient needs no step; a single
/// nonzero row or column needs one; the general rank-one case needs two.
/// The certificate offset is the total number of bordering steps and its
/// readback recovers each source value from the completed cell.
std::pair<PartialMatrix, Certificate> reduce_1rm_to_lrmc(const AffineMatrixFamily& fam);

/// Interprets a reduce_1rm_to_lrmc certificate against a completion of the
/// reduced instance (an assignment of the fill variables).
Assignment apply_cell_readback(const std::vector<CellReadback>& cells, const PartialMatrix& p,
                               const Assignment& fills);

}  // namespace rankred
