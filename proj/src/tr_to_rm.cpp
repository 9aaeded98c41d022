#include "rankred/tr_to_rm.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rankred {

namespace {

std::string fill_name(std::size_t row, std::size_t col) {
  return "fill." + std::to_string(row) + "." + std::to_string(col);
}

void emit_pad(PartialMatrix& out, const Matrix& inner, std::size_t r0, std::size_t c0,
              std::vector<PadBlockInfo>* pads) {
  const std::size_t n = inner.rows(), m = inner.cols();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) out.set_known(r0 + i, c0 + j, inner.at(i, j));
  for (std::size_t i = 0; i < n; ++i) out.set_unknown(r0 + i, c0 + m, fill_name(r0 + i, c0 + m));
  for (std::size_t j = 0; j < m; ++j) out.set_unknown(r0 + n, c0 + j, fill_name(r0 + n, c0 + j));
  out.set_known(r0 + n, c0 + m, Scalar::one(out.field()));
  if (pads) pads->push_back({r0, c0, inner});
}

std::pair<std::size_t, std::size_t> a_dims(const std::vector<std::size_t>& shape) {
  if (shape.size() == 2) return {shape[0] + 1, shape[1] + 1};
  std::vector<std::size_t> head(shape.begin(), shape.end() - 1);
  auto [hr, hc] = a_dims(head);
  std::size_t lead = 1;
  for (std::size_t d : head) lead *= d;
  return {lead + 1 + shape.back() * hr, shape.back() + 1 + shape.back() * hc};
}

std::pair<std::size_t, std::size_t> b_dims(const std::vector<std::size_t>& shape) {
  auto [ar, ac] = a_dims(shape);
  return {ar - 1, ac - 1};  // B drops the pad around the leading block
}

void emit_a(PartialMatrix& out, const Tensor& t, std::size_t r0, std::size_t c0,
            std::vector<PadBlockInfo>* pads);

void emit_b(PartialMatrix& out, const Tensor& t, std::size_t r0, std::size_t c0,
            std::vector<PadBlockInfo>* pads) {
  if (t.order() == 2) {
    const Matrix m = t.as_matrix();
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.set_known(r0 + i, c0 + j, m.at(i, j));
    return;
  }
  const Matrix n = slice_matrix(t);
  for (std::size_t i = 0; i < n.rows(); ++i)
    for (std::size_t j = 0; j < n.cols(); ++j) out.set_known(r0 + i, c0 + j, n.at(i, j));
  std::size_t row = r0 + n.rows(), col = c0 + n.cols();
  for (const Tensor& s : t.last_mode_slices()) {
    emit_a(out, s, row, col, pads);
    auto [ar, ac] = a_dims(s.shape());
    row += ar;
    col += ac;
  }
}

void emit_a(PartialMatrix& out, const Tensor& t, std::size_t r0, std::size_t c0,
            std::vector<PadBlockInfo>* pads) {
  if (t.order() == 2) {
    emit_pad(out, t.as_matrix(), r0, c0, pads);
    return;
  }
  const Matrix n = slice_matrix(t);
  emit_pad(out, n, r0, c0, pads);
  std::size_t row = r0 + n.rows() + 1, col = c0 + n.cols() + 1;
  for (const Tensor& s : t.last_mode_slices()) {
    emit_a(out, s, row, col, pads);
    auto [ar, ac] = a_dims(s.shape());
    row += ar;
    col += ac;
  }
}

}  // namespace

PartialMatrix pad(const Matrix& m) {
  PartialMatrix out(m.field(), m.rows() + 1, m.cols() + 1);
  emit_pad(out, m, 0, 0, nullptr);
  return out;
}

std::size_t k_constant(const std::vector<std::size_t>& shape) {
  if (shape.size() < 2) throw std::invalid_argument("k_constant: order must be >= 2");
  std::size_t total = 0;
  for (std::size_t start = 2; start < shape.size(); ++start) {
    std::size_t prod = 1;
    for (std::size_t i = start; i < shape.size(); ++i) prod *= shape[i];
    total += prod;
  }
  return total;
}

Matrix slice_matrix(const Tensor& t) {
  const std::size_t nd = t.dim(t.order() - 1);
  const std::size_t lead = t.size() / nd;
  Matrix n(t.field(), lead, nd);
  for (std::size_t k = 0; k < lead; ++k)
    for (std::size_t i = 0; i < nd; ++i) n.at(k, i) = t.entry(k * nd + i);
  return n;
}

PartialMatrix build_a(const Tensor& t, std::vector<PadBlockInfo>* pads) {
  auto [rows, cols] = a_dims(t.shape());
  PartialMatrix out(t.field(), rows, cols);
  emit_a(out, t, 0, 0, pads);
  return out;
}

PartialMatrix build_b(const Tensor& t, std::vector<PadBlockInfo>* pads) {
  auto [rows, cols] = b_dims(t.shape());
  PartialMatrix out(t.field(), rows, cols);
  emit_b(out, t, 0, 0, pads);
  return out;
}

Assignment pad_completion_witness(const std::vector<PadBlockInfo>& pads) {
  Assignment fills;
  for (const auto& block : pads) {
    const Matrix& inner = block.inner;
    const std::size_t n = inner.rows(), m = inner.cols();
    const Field f = inner.field();

    Vec border_col(n, Scalar::zero(f));
    Vec border_row(m, Scalar::zero(f));
    std::size_t jv = m;
    for (std::size_t j = 0; j < m && jv == m; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (!inner.at(i, j).is_zero()) {
          jv = j;
          break;
        }
    if (jv < m) {
      border_col = inner.col(jv);
      std::size_t iv = 0;
      while (inner.at(iv, jv).is_zero()) ++iv;
      const Scalar inv = inner.at(iv, jv).inverse();
      border_row = vec_scaled(inner.row(iv), inv);
    }
    for (std::size_t i = 0; i < n; ++i)
      fills.set(fill_name(block.row0 + i, block.col0 + m), border_col[i]);
    for (std::size_t j = 0; j < m; ++j)
      fills.set(fill_name(block.row0 + n, block.col0 + j), border_row[j]);
  }
  return fills;
}

// --- the telescoping gadget -------------------------------------------------

VarId CGadget::u_var(std::size_t i, std::size_t flat) {
  return "u." + std::to_string(i) + "." + std::to_string(flat);
}

VarId CGadget::fill_var(std::size_t block, std::size_t local_row, std::size_t local_col) const {
  return fill_name(blocks[block].row0 + local_row, blocks[block].col0 + local_col);
}

namespace {

using Tpl = CGadget::Template;

void tpl_set(Tpl& t, std::size_t i, std::size_t j, Tpl::Tag tag, std::uint32_t dvar = 0) {
  t.tag[i * t.cols + j] = tag;
  t.dvar[i * t.cols + j] = dvar;
  if (tag == Tpl::Tag::fill) ++t.fill_count;
}

void tpl_pad(Tpl& t, std::size_t r0, std::size_t c0, std::size_t n, std::size_t m,
             const std::vector<std::uint32_t>& cells) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) tpl_set(t, r0 + i, c0 + j, Tpl::Tag::dvar, cells[i * m + j]);
  for (std::size_t i = 0; i < n; ++i) tpl_set(t, r0 + i, c0 + m, Tpl::Tag::fill);
  for (std::size_t j = 0; j < m; ++j) tpl_set(t, r0 + n, c0 + j, Tpl::Tag::fill);
  tpl_set(t, r0 + n, c0 + m, Tpl::Tag::one);
}

void tpl_emit_a(Tpl& t, const std::vector<std::size_t>& shape, std::size_t r0, std::size_t c0,
                const std::vector<std::uint32_t>& dmap);

/// dmap[local flat] = flat index into the block's difference tensor.
void tpl_emit_b(Tpl& t, const std::vector<std::size_t>& shape, std::size_t r0, std::size_t c0,
                const std::vector<std::uint32_t>& dmap) {
  if (shape.size() == 2) {
    for (std::size_t i = 0; i < shape[0]; ++i)
      for (std::size_t j = 0; j < shape[1]; ++j)
        tpl_set(t, r0 + i, c0 + j, Tpl::Tag::dvar, dmap[i * shape[1] + j]);
    return;
  }
  const std::size_t nd = shape.back();
  const std::size_t lead = dmap.size() / nd;
  for (std::size_t k = 0; k < lead; ++k)
    for (std::size_t i = 0; i < nd; ++i)
      tpl_set(t, r0 + k, c0 + i, Tpl::Tag::dvar, dmap[k * nd + i]);

  std::vector<std::size_t> head(shape.begin(), shape.end() - 1);
  std::size_t row = r0 + lead, col = c0 + nd;
  auto [ar, ac] = a_dims(head);
  for (std::size_t s = 0; s < nd; ++s) {
    std::vector<std::uint32_t> sub(lead);
    for (std::size_t k = 0; k < lead; ++k) sub[k] = dmap[k * nd + s];
    tpl_emit_a(t, head, row, col, sub);
    row += ar;
    col += ac;
  }
}

void tpl_emit_a(Tpl& t, const std::vector<std::size_t>& shape, std::size_t r0, std::size_t c0,
                const std::vector<std::uint32_t>& dmap) {
  if (shape.size() == 2) {
    tpl_pad(t, r0, c0, shape[0], shape[1], dmap);
    return;
  }
  const std::size_t nd = shape.back();
  const std::size_t lead = dmap.size() / nd;
  {
    std::vector<std::uint32_t> cells(dmap.size());
    for (std::size_t k = 0; k < lead; ++k)
      for (std::size_t i = 0; i < nd; ++i) cells[k * nd + i] = dmap[k * nd + i];
    tpl_pad(t, r0, c0, lead, nd, cells);
  }
  std::vector<std::size_t> head(shape.begin(), shape.end() - 1);
  std::size_t row = r0 + lead + 1, col = c0 + nd + 1;
  auto [ar, ac] = a_dims(head);
  for (std::size_t s = 0; s < nd; ++s) {
    std::vector<std::uint32_t> sub(lead);
    for (std::size_t k = 0; k < lead; ++k) sub[k] = dmap[k * nd + s];
    tpl_emit_a(t, head, row, col, sub);
    row += ar;
    col += ac;
  }
}

}  // namespace

CGadget build_c(const Tensor& t, std::size_t k) {
  if (k == 0) throw std::invalid_argument("build_c: k must be positive");
  const Field f = t.field();
  const std::size_t entries = t.size();

  CGadget g{AffineMatrixFamily(Matrix(f, 0, 0)), t, k, k_constant(t.shape()), {}, {}};

  auto [brows, bcols] = b_dims(t.shape());
  g.tpl.rows = brows;
  g.tpl.cols = bcols;
  g.tpl.tag.assign(brows * bcols, Tpl::Tag::zero);
  g.tpl.dvar.assign(brows * bcols, 0);
  std::vector<std::uint32_t> identity(entries);
  for (std::size_t i = 0; i < entries; ++i) identity[i] = static_cast<std::uint32_t>(i);
  tpl_emit_b(g.tpl, t.shape(), 0, 0, identity);

  for (std::size_t b = 0; b < k; ++b)
    g.blocks.push_back({b * brows, b * bcols, brows, bcols});

  const std::size_t rows = k * brows, cols = k * bcols;
  Matrix base(f, rows, cols);
  std::map<VarId, Matrix> coeffs;
  std::vector<VarId> order;

  auto coeff_of = [&](const VarId& id) -> Matrix& {
    auto it = coeffs.find(id);
    if (it == coeffs.end()) {
      it = coeffs.emplace(id, Matrix(f, rows, cols)).first;
      order.push_back(id);
    }
    return it->second;
  };

  for (std::size_t b = 1; b <= k; ++b) {
    const auto& span = g.blocks[b - 1];
    for (std::size_t i = 0; i < brows; ++i)
      for (std::size_t j = 0; j < bcols; ++j) {
        const std::size_t gi = span.row0 + i, gj = span.col0 + j;
        switch (g.tpl.tag[i * bcols + j]) {
          case Tpl::Tag::zero:
            break;
          case Tpl::Tag::one:
            base.at(gi, gj) = Scalar::one(f);
            break;
          case Tpl::Tag::fill:
            coeff_of(g.fill_var(b - 1, i, j)).at(gi, gj) = Scalar::one(f);
            break;
          case Tpl::Tag::dvar: {
            const std::uint32_t d = g.tpl.dvar[i * bcols + j];
            // difference U_{b-1} - U_b with U_0 = T and U_k = 0
            if (b == 1)
              base.at(gi, gj) = t.entry(d);
            else
              coeff_of(CGadget::u_var(b - 1, d)).at(gi, gj) = Scalar::one(f);
            if (b <= k - 1)
              coeff_of(CGadget::u_var(b, d)).at(gi, gj) = -Scalar::one(f);
            break;
          }
        }
      }
  }

  std::vector<FamilyTerm> terms;
  terms.reserve(order.size());
  for (const auto& id : order) terms.push_back({id, coeffs.at(id)});
  g.family = AffineMatrixFamily(std::move(base), std::move(terms));
  return g;
}

namespace {

void decode_base_p(std::uint64_t value, std::uint32_t p, std::vector<std::uint16_t>& digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<std::uint16_t>(value % p);
    value /= p;
  }
}

/// One diagonal block at a concrete difference value, fills as local
/// unknowns.  mrank_exhaustive splits its independent sub-blocks on its own.
PartialMatrix block_at(const CGadget& g, const std::vector<std::uint16_t>& dvals) {
  const Field f = g.source.field();
  PartialMatrix pm(f, g.tpl.rows, g.tpl.cols);
  for (std::size_t i = 0; i < g.tpl.rows; ++i)
    for (std::size_t j = 0; j < g.tpl.cols; ++j) {
      const std::size_t pos = i * g.tpl.cols + j;
      switch (g.tpl.tag[pos]) {
        case Tpl::Tag::zero:
          break;
        case Tpl::Tag::one:
          pm.set_known(i, j, Scalar::one(f));
          break;
        case Tpl::Tag::dvar:
          pm.set_known(i, j, Scalar::gf_residue(f, dvals[g.tpl.dvar[pos]]));
          break;
        case Tpl::Tag::fill:
          pm.set_unknown(i, j, fill_name(i, j));
          break;
      }
    }
  return pm;
}

}  // namespace

OracleResult mrank_c_gadget(const CGadget& g, const SearchBudget& budget, int threads) {
  const Field field = g.source.field();
  if (!field.is_prime_field()) throw InfiniteField("mrank_c_gadget needs a finite field");
  const std::uint32_t p = field.modulus();
  const std::size_t entries = g.source.size();

  std::vector<std::uint16_t> t_digits(entries);
  for (std::size_t i = 0; i < entries; ++i)
    t_digits[i] = static_cast<std::uint16_t>(g.source.entry(i).residue());

  auto combine_index = [&](const std::vector<std::uint16_t>& digits) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < entries; ++i) idx = idx * p + digits[i];
    return idx;
  };

  std::uint64_t dspace = 1;
  if (g.k > 1) {
    for (std::size_t i = 0; i < entries; ++i) {
      if (dspace > budget.max_assignments / p)
        throw BudgetExceeded("mrank_c_gadget: difference space exceeds the budget");
      dspace *= p;
    }
    const std::uint64_t conv_work = (g.k - 1) * dspace * dspace;
    if (dspace > budget.max_assignments || conv_work > budget.max_assignments)
      throw BudgetExceeded("mrank_c_gadget: convolution work exceeds the budget");
  }

  const std::uint64_t t_index = combine_index(t_digits);

  // minimal completion rank of one block per difference value; for k = 1
  // only the value at T itself is needed
  std::vector<std::uint16_t> table(g.k > 1 ? dspace : 1, 0);
  std::vector<std::uint64_t> table_explored(table.size(), 0);
  bool over_budget = false;
#ifdef _OPENMP
  if (threads <= 0) threads = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#endif
  for (std::int64_t d = 0; d < static_cast<std::int64_t>(table.size()); ++d) {
    std::vector<std::uint16_t> digits(entries);
    decode_base_p(g.k > 1 ? static_cast<std::uint64_t>(d) : t_index, p, digits);
    try {
      const OracleResult part = mrank_exhaustive(block_at(g, digits), budget, 1);
      table[d] = static_cast<std::uint16_t>(part.minimum);
      table_explored[d] = part.explored;
    } catch (const BudgetExceeded&) {
      over_budget = true;
    }
  }
  if (over_budget) throw BudgetExceeded("mrank_c_gadget: block completion exceeds the budget");

  OracleResult out;
  for (std::uint64_t e : table_explored) out.explored += e;

  // min-plus convolution over the k differences with prefix sums fixed to T
  std::vector<std::vector<std::uint32_t>> argmin(g.k);  // argmin[i][X]: D_{i+1} given prefix X
  std::vector<std::uint32_t> f_cur(table.begin(), table.end());
  if (g.k > 1) {
    std::vector<std::uint16_t> xd(entries), dd(entries), diff(entries);
    for (std::size_t level = 1; level < g.k; ++level) {
      std::vector<std::uint32_t> f_next(dspace, UINT32_MAX);
      argmin[level] = std::vector<std::uint32_t>(dspace, 0);
      for (std::uint64_t x = 0; x < dspace; ++x) {
        decode_base_p(x, p, xd);
        for (std::uint64_t d = 0; d < dspace; ++d) {
          decode_base_p(d, p, dd);
          for (std::size_t i = 0; i < entries; ++i)
            diff[i] = static_cast<std::uint16_t>((xd[i] + p - dd[i]) % p);
          const std::uint32_t cand = f_cur[combine_index(diff)] + table[d];
          if (cand < f_next[x]) {
            f_next[x] = cand;
            argmin[level][x] = static_cast<std::uint32_t>(d);
          }
        }
      }
      f_cur = std::move(f_next);
      out.explored += dspace * dspace;
    }
  }

  out.minimum = g.k > 1 ? f_cur[t_index] : f_cur[0];

  // backtrack the chosen differences, last block first
  std::vector<std::vector<std::uint16_t>> d_values(g.k, std::vector<std::uint16_t>(entries));
  {
    std::vector<std::uint16_t> x = t_digits;
    for (std::size_t level = g.k; level-- > 1;) {
      const std::uint64_t xi = combine_index(x);
      decode_base_p(argmin[level][xi], p, d_values[level]);
      for (std::size_t i = 0; i < entries; ++i)
        x[i] = static_cast<std::uint16_t>((x[i] + p - d_values[level][i]) % p);
    }
    d_values[0] = x;
  }

  // witness: U_i = D_{i+1} + ... + D_k, plus the per-block fill minimizers
  Assignment witness;
  std::vector<std::uint16_t> u(entries, 0);
  for (std::size_t i = g.k; i-- > 1;) {
    for (std::size_t e = 0; e < entries; ++e)
      u[e] = static_cast<std::uint16_t>((u[e] + d_values[i][e]) % p);
    for (std::size_t e = 0; e < entries; ++e)
      witness.set(CGadget::u_var(i, e), Scalar::gf_residue(field, u[e]));
  }
  for (std::size_t b = 0; b < g.k; ++b) {
    const PartialMatrix block = block_at(g, d_values[b]);
    const OracleResult part = mrank_exhaustive(block, budget, 1);
    for (std::size_t i = 0; i < g.tpl.rows; ++i)
      for (std::size_t j = 0; j < g.tpl.cols; ++j)
        if (g.tpl.tag[i * g.tpl.cols + j] == Tpl::Tag::fill)
          witness.set(g.fill_var(b, i, j), part.witness.get(fill_name(i, j)));
  }

  if (g.family.evaluate(witness).rank() != out.minimum)
    throw std::logic_error("mrank_c_gadget: witness failed re-evaluation");
  out.witness = std::move(witness);
  return out;
}

std::size_t tensor_rank_via_c(const Tensor& t, std::size_t k, const CGadgetSolver& solver) {
  CGadget g = build_c(t, k);
  const OracleResult res = solver(g);
  return res.minimum - k * g.k_value;
}

std::pair<CGadget, Certificate> reduce_tr_to_rm(const Tensor& t, std::size_t k) {
  CGadget g = build_c(t, k);
  Certificate cert;
  cert.offset = k * g.k_value;
  cert.pullback = CGadgetPullback{t.shape(), k, g.k_value};
  return {std::move(g), std::move(cert)};
}

}  // namespace rankred
