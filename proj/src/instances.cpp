#include "rankred/instances.hpp"

#include <set>

namespace rankred {

void Assignment::set(const VarId& v, const Scalar& value) {
  values_.insert_or_assign(v, value);
}

const Scalar& Assignment::get(const VarId& v) const {
  auto it = values_.find(v);
  if (it == values_.end()) throw MissingVariable(v);
  return it->second;
}

AffineMatrixFamily::AffineMatrixFamily(Matrix base, std::vector<FamilyTerm> terms)
    : base_(std::move(base)), terms_(std::move(terms)) {
  std::set<VarId> seen;
  for (const auto& t : terms_) {
    if (t.coeff.rows() != base_.rows() || t.coeff.cols() != base_.cols())
      throw std::invalid_argument("AffineMatrixFamily: coefficient shape mismatch for '" +
                                  t.var + "'");
    if (!(t.coeff.field() == base_.field()))
      throw FieldMismatch("AffineMatrixFamily: coefficient field mismatch for '" + t.var + "'");
    if (!seen.insert(t.var).second)
      throw std::invalid_argument("AffineMatrixFamily: duplicate variable '" + t.var + "'");
  }
}

std::vector<VarId> AffineMatrixFamily::var_ids() const {
  std::vector<VarId> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back(t.var);
  return out;
}

std::vector<VarId> AffineMatrixFamily::sorted_var_ids() const {
  std::vector<VarId> out = var_ids();
  std::sort(out.begin(), out.end());
  return out;
}

Matrix AffineMatrixFamily::evaluate(const Assignment& a) const {
  Matrix m = base_;
  for (const auto& t : terms_) {
    const Scalar& x = a.get(t.var);
    if (!(x.field() == field()))
      throw FieldMismatch("evaluate: value field mismatch for '" + t.var + "'");
    if (x.is_zero()) continue;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        const Scalar& c = t.coeff.at(i, j);
        if (!c.is_zero()) m.at(i, j) += x * c;
      }
  }
  return m;
}

bool validate_1rm(const AffineMatrixFamily& fam) {
  for (const auto& t : fam.terms())
    if (t.coeff.rank() != 1) return false;
  return true;
}

PartialMatrix::PartialMatrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), cells_(rows * cols, Cell(Scalar::zero(f))) {}

void PartialMatrix::set_known(std::size_t i, std::size_t j, const Scalar& v) {
  if (!(v.field() == field_)) throw FieldMismatch("PartialMatrix::set_known: field mismatch");
  cells_[i * cols_ + j] = v;
}

void PartialMatrix::set_unknown(std::size_t i, std::size_t j, const VarId& id) {
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    if (k == i * cols_ + j) continue;
    if (const VarId* u = std::get_if<VarId>(&cells_[k]); u && *u == id)
      throw std::invalid_argument("PartialMatrix: unknown '" + id + "' used in two cells");
  }
  cells_[i * cols_ + j] = id;
}

bool PartialMatrix::is_unknown(std::size_t i, std::size_t j) const {
  return std::holds_alternative<VarId>(cells_[i * cols_ + j]);
}

const Scalar& PartialMatrix::known_at(std::size_t i, std::size_t j) const {
  return std::get<Scalar>(cells_[i * cols_ + j]);
}

const VarId& PartialMatrix::unknown_at(std::size_t i, std::size_t j) const {
  return std::get<VarId>(cells_[i * cols_ + j]);
}

std::size_t PartialMatrix::unknown_count() const {
  std::size_t n = 0;
  for (const auto& c : cells_)
    if (std::holds_alternative<VarId>(c)) ++n;
  return n;
}

std::vector<VarId> PartialMatrix::unknown_ids() const {
  std::vector<VarId> out;
  for (const auto& c : cells_)
    if (const VarId* u = std::get_if<VarId>(&c)) out.push_back(*u);
  return out;
}

Matrix PartialMatrix::complete(const Assignment& fills) const {
  Matrix m(field_, rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      const Cell& c = cells_[i * cols_ + j];
      if (const VarId* u = std::get_if<VarId>(&c)) {
        m.at(i, j) = fills.get(*u);
      } else {
        m.at(i, j) = std::get<Scalar>(c);
      }
    }
  return m;
}

AffineMatrixFamily lrmc_as_1rm(const PartialMatrix& p) {
  Matrix base(p.field(), p.rows(), p.cols());
  std::vector<FamilyTerm> terms;
  for (std::size_t i = 0; i < p.rows(); ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p.is_unknown(i, j)) {
        Matrix coeff(p.field(), p.rows(), p.cols());
        coeff.at(i, j) = Scalar::one(p.field());
        terms.push_back({p.unknown_at(i, j), std::move(coeff)});
      } else {
        base.at(i, j) = p.known_at(i, j);
      }
    }
  return AffineMatrixFamily(std::move(base), std::move(terms));
}

}  // namespace rankred
