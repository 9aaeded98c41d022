#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rankred/matrix.hpp"
#include "rankred/tensor.hpp"

namespace rankred {

using VarId = std::string;

class MissingVariable : public std::runtime_error {
 public:
  explicit MissingVariable(const VarId& v)
      : std::runtime_error("assignment is missing variable '" + v + "'") {}
};

/// A total map from variables to field elements.  Iteration order is the
/// sorted variable order, which every deterministic contract relies on.
class Assignment {
 public:
  Assignment() = default;

  void set(const VarId& v, const Scalar& value);
  const Scalar& get(const VarId& v) const;
  bool has(const VarId& v) const { return values_.count(v) != 0; }
  std::size_t size() const { return values_.size(); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

 private:
  std::map<VarId, Scalar> values_;
};

struct FamilyTerm {
  VarId var;
  Matrix coeff;
};

/// The affine family A + sum_i x_i B_i.  Base and coefficients share
/// dimensions and field; variable ids are distinct.
class AffineMatrixFamily {
 public:
  explicit AffineMatrixFamily(Matrix base, std::vector<FamilyTerm> terms = {});

  const Matrix& base() const { return base_; }
  const std::vector<FamilyTerm>& terms() const { return terms_; }
  const Field& field() const { return base_.field(); }
  std::size_t rows() const { return base_.rows(); }
  std::size_t cols() const { return base_.cols(); }

  std::vector<VarId> var_ids() const;         // term order
  std::vector<VarId> sorted_var_ids() const;  // enumeration order

  Matrix evaluate(const Assignment& a) const;

 private:
  Matrix base_;
  std::vector<FamilyTerm> terms_;
};

/// True iff every coefficient matrix has rank exactly 1.
bool validate_1rm(const AffineMatrixFamily& fam);

/// A matrix grid whose cells are known scalars or named unknowns; each
/// unknown id appears in exactly one cell.
class PartialMatrix {
 public:
  PartialMatrix(const Field& f, std::size_t rows, std::size_t cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set_known(std::size_t i, std::size_t j, const Scalar& v);
  void set_unknown(std::size_t i, std::size_t j, const VarId& id);

  bool is_unknown(std::size_t i, std::size_t j) const;
  const Scalar& known_at(std::size_t i, std::size_t j) const;
  const VarId& unknown_at(std::size_t i, std::size_t j) const;

  std::size_t unknown_count() const;
  /// Unknown ids in row-major cell order.
  std::vector<VarId> unknown_ids() const;

  Matrix complete(const Assignment& fills) const;

 private:
  using Cell = std::variant<Scalar, VarId>;
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Cell> cells_;
};

/// The inclusion LRMC -> 1-RM: knowns stay in the base, every unknown cell
/// becomes a variable with a single-entry rank-one coefficient.
AffineMatrixFamily lrmc_as_1rm(const PartialMatrix& p);

// --- certificates ----------------------------------------------------------
//
// Every reduction returns a Certificate: the additive rank offset plus the
// data needed to pull a minimizer of the reduced instance back to a
// minimizer of the source instance.  The pullback payload is plain data so
// it survives the JSON round trip; the apply functions live with their
// reductions.

/// One gadget level: reading a source variable back out of the gadget
/// variables of that level.
struct RecoverXLevel {
  VarId source_var;
  std::vector<VarId> x_vars;  // x_vars[i] carries x_{i+1}
  // (i, j, var), 1-based indices, i != j for y and i < j for z
  std::vector<std::tuple<std::size_t, std::size_t, VarId>> y_vars;
  std::vector<std::tuple<std::size_t, std::size_t, VarId>> z_vars;
};

/// Source variable value = (completed cell - base) / coeff.
struct CellReadback {
  VarId source_var;
  std::size_t row, col;
  Scalar base;
  Scalar coeff;
};

/// Pullback through the stacked tensor: a minimal decomposition yields the
/// linear functional and with it the source assignment.
struct StackedPullback {
  std::vector<VarId> source_vars;  // variable for slice k, k = 1..s
};

struct EGadgetPullback {
  std::size_t p = 0, q = 0, r = 0, k = 0;
};

struct CGadgetPullback {
  std::vector<std::size_t> shape;
  std::size_t k = 0;
  std::size_t k_constant = 0;
};

using Pullback = std::variant<std::monostate, std::vector<RecoverXLevel>,
                              std::vector<CellReadback>, StackedPullback,
                              EGadgetPullback, CGadgetPullback>;

struct Certificate {
  std::size_t offset = 0;
  Pullback pullback;
};

}  // namespace rankred
