#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "morext/matrix.hpp"

namespace morext {

template <Field F>
using SparseRow = std::vector<std::pair<std::size_t, typename F::value_type>>;

template <Field F>
SparseRow<F> to_sparse(const F& f, const Vec<F>& v) {
  SparseRow<F> row;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!f.is_zero(v[i])) row.emplace_back(i, v[i]);
  return row;
}

template <Field F>
Vec<F> to_dense(const F& f, const SparseRow<F>& row, std::size_t n) {
  Vec<F> v(n, f.zero());
  for (const auto& [c, x] : row) v[c] = x;
  return v;
}

/// Incremental row-echelon basis of a subspace of F^cols. Rows are kept
/// sparse and normalised to a leading one; every inserted row is fully
/// reduced against the pivots present at insertion time. make_reduced()
/// back-substitutes to the (unique) reduced row-echelon form.
template <Field F>
class Echelon {
 public:
  using value_type = typename F::value_type;
  using Row = SparseRow<F>;

  Echelon(F field, std::size_t cols)
      : field_(std::move(field)), cols_(cols), pivot_row_(cols, npos),
        scratch_(cols, field_.zero()) {}

  const F& field() const { return field_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  /// Returns true when the row was independent of the current span.
  bool insert(const Row& row) {
    Row r = reduce(row);
    if (r.empty()) return false;
    auto lead_inv = field_.inv(r.front().second);
    for (auto& e : r) e.second = field_.mul(lead_inv, e.second);
    pivot_row_[r.front().first] = rows_.size();
    rows_.push_back(std::move(r));
    reduced_ = false;
    return true;
  }
  bool insert(const Vec<F>& v) { return insert(to_sparse(field_, v)); }

  /// Fully reduces a row against all pivots.
  Row reduce(const Row& row) const {
    if (row.empty()) return {};
    std::size_t first = cols_;
    for (const auto& [c, x] : row) {
      if (c >= cols_) throw DimensionMismatch("row longer than echelon width");
      if (!field_.is_zero(x)) {
        scratch_[c] = x;
        first = std::min(first, c);
      }
    }
    Row out;
    for (std::size_t c = first; c < cols_; ++c) {
      if (field_.is_zero(scratch_[c])) continue;
      auto p = pivot_row_[c];
      if (p == npos) {
        out.emplace_back(c, scratch_[c]);
        scratch_[c] = field_.zero();
        continue;
      }
      auto factor = scratch_[c];
      for (const auto& [pc, px] : rows_[p])
        scratch_[pc] = field_.sub(scratch_[pc], field_.mul(factor, px));
    }
    return out;
  }
  Vec<F> reduce(const Vec<F>& v) const { return to_dense(field_, reduce(to_sparse(field_, v)), cols_); }

  bool contains(const Row& row) const { return reduce(row).empty(); }
  bool contains(const Vec<F>& v) const { return contains(to_sparse(field_, v)); }

  /// Back-substitution to reduced row-echelon form.
  void make_reduced() {
    if (reduced_) return;
    auto piv = pivot_columns();
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
      Row& r = rows_[pivot_row_[*it]];
      bool dirty = false;
      for (std::size_t k = 1; k < r.size(); ++k)
        if (pivot_row_[r[k].first] != npos) dirty = true;
      if (!dirty) continue;
      for (const auto& [c, x] : r) scratch_[c] = x;
      std::size_t lead = r.front().first;
      Row out;
      out.emplace_back(lead, field_.one());
      scratch_[lead] = field_.zero();
      for (std::size_t c = lead + 1; c < cols_; ++c) {
        if (field_.is_zero(scratch_[c])) continue;
        auto p = pivot_row_[c];
        if (p == npos) {
          out.emplace_back(c, scratch_[c]);
          scratch_[c] = field_.zero();
          continue;
        }
        auto factor = scratch_[c];
        for (const auto& [pc, px] : rows_[p])
          scratch_[pc] = field_.sub(scratch_[pc], field_.mul(factor, px));
      }
      r = std::move(out);
    }
    reduced_ = true;
  }

  std::vector<std::size_t> pivot_columns() const {
    std::vector<std::size_t> piv;
    piv.reserve(rows_.size());
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row_[c] != npos) piv.push_back(c);
    return piv;
  }
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < cols_; ++c)
      if (pivot_row_[c] == npos) out.push_back(c);
    return out;
  }
  bool is_pivot(std::size_t c) const { return pivot_row_[c] != npos; }
  const Row& row_at_pivot(std::size_t c) const { return rows_[pivot_row_[c]]; }

  /// Reduced basis rows ordered by pivot column.
  std::vector<Vec<F>> basis() {
    make_reduced();
    std::vector<Vec<F>> out;
    for (auto c : pivot_columns()) out.push_back(to_dense(field_, row_at_pivot(c), cols_));
    return out;
  }

  /// Basis of the right null space of the row space: one vector per free
  /// column, free variable set to one, ordered by free column.
  std::vector<Vec<F>> kernel() {
    make_reduced();
    std::vector<std::size_t> slot(cols_, npos);
    auto fc = free_columns();
    for (std::size_t i = 0; i < fc.size(); ++i) slot[fc[i]] = i;
    std::vector<Vec<F>> out(fc.size(), Vec<F>(cols_, field_.zero()));
    for (std::size_t i = 0; i < fc.size(); ++i) out[i][fc[i]] = field_.one();
    for (auto p : pivot_columns())
      for (const auto& [c, x] : row_at_pivot(p))
        if (c != p) out[slot[c]][p] = field_.neg(x);
    return out;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  F field_;
  std::size_t cols_;
  std::vector<std::size_t> pivot_row_;
  std::vector<Row> rows_;
  mutable Vec<F> scratch_;
  bool reduced_ = true;
};

/// Reduced row-echelon form together with its pivot columns.
template <Field F>
struct RrefResult {
  Matrix<F> matrix;
  std::vector<std::size_t> pivots;
};

template <Field F>
RrefResult<F> rref(const Matrix<F>& m) {
  const F& f = m.field();
  Echelon<F> e(f, m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  auto rows = e.basis();
  Matrix<F> out(f, m.rows(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = rows[r][c];
  return {std::move(out), e.pivot_columns()};
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
  Echelon<F> e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.rank();
}

template <Field F>
std::vector<Vec<F>> kernel_basis(const Matrix<F>& m) {
  Echelon<F> e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) e.insert(m.row(r));
  return e.kernel();
}

/// Null space of a system given directly as sparse equations.
template <Field F>
std::vector<Vec<F>> kernel_of_equations(const F& f, std::size_t unknowns,
                                        const std::vector<SparseRow<F>>& equations) {
  Echelon<F> e(f, unknowns);
  for (const auto& eq : equations) e.insert(eq);
  return e.kernel();
}

/// Some x with m x = b, free variables zero; nullopt when inconsistent.
template <Field F>
std::optional<Vec<F>> solve_linear(const Matrix<F>& m, const Vec<F>& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length");
  const F& f = m.field();
  const std::size_t n = m.cols();
  Echelon<F> e(f, n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    row.push_back(b[r]);
    e.insert(row);
  }
  if (e.is_pivot(n)) return std::nullopt;
  e.make_reduced();
  Vec<F> x(n, f.zero());
  for (auto p : e.pivot_columns()) {
    const auto& row = e.row_at_pivot(p);
    for (const auto& [c, v] : row)
      if (c == n) x[p] = v;
  }
  return x;
}

/// Coefficients c with sum c_i vectors[i] = target, or nullopt.
template <Field F>
std::optional<Vec<F>> span_membership(const F& f, const std::vector<Vec<F>>& vectors,
                                      const Vec<F>& target) {
  for (const auto& v : vectors)
    if (v.size() != target.size()) throw DimensionMismatch("span_membership");
  return solve_linear(Matrix<F>::from_columns(f, vectors, target.size()), target);
}

/// Canonical reduced basis of the span of the given vectors.
template <Field F>
std::vector<Vec<F>> span_basis(const F& f, const std::vector<Vec<F>>& vectors, std::size_t n) {
  Echelon<F> e(f, n);
  for (const auto& v : vectors) e.insert(v);
  return e.basis();
}

template <Field F>
std::size_t span_dim(const F& f, const std::vector<Vec<F>>& vectors, std::size_t n) {
  Echelon<F> e(f, n);
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

/// True when span(inner) is contained in span(outer).
template <Field F>
bool span_contains(const F& f, const std::vector<Vec<F>>& outer,
                   const std::vector<Vec<F>>& inner, std::size_t n) {
  Echelon<F> e(f, n);
  for (const auto& v : outer) e.insert(v);
  for (const auto& v : inner)
    if (!e.contains(v)) return false;
  return true;
}

/// The quotient F^n / span(relations) with its canonical basis: the
/// non-pivot coordinates of the reduced relation space. Projection sends an
/// ambient vector to quotient coordinates; section lifts basis vectors to
/// the corresponding ambient unit vectors.
template <Field F>
class Quotient {
 public:
  Quotient(const F& f, std::size_t ambient) : relations_(f, ambient) { finish(); }

  template <class Rows>
  Quotient(const F& f, std::size_t ambient, const Rows& relations) : relations_(f, ambient) {
    for (const auto& r : relations) relations_.insert(r);
    finish();
  }

  const F& field() const { return relations_.field(); }
  std::size_t ambient_dim() const { return relations_.cols(); }
  std::size_t dim() const { return basis_cols_.size(); }
  std::size_t relation_rank() const { return relations_.rank(); }

  /// Ambient coordinate carried by quotient basis vector i.
  std::size_t basis_column(std::size_t i) const { return basis_cols_[i]; }

  Vec<F> project(const SparseRow<F>& v) const {
    const F& f = field();
    Vec<F> out(dim(), f.zero());
    for (const auto& [c, x] : v) {
      if (f.is_zero(x)) continue;
      if (relations_.is_pivot(c)) {
        for (const auto& [rc, rx] : relations_.row_at_pivot(c))
          if (rc != c) out[slot_[rc]] = f.sub(out[slot_[rc]], f.mul(x, rx));
      } else {
        out[slot_[c]] = f.add(out[slot_[c]], x);
      }
    }
    return out;
  }
  Vec<F> project(const Vec<F>& v) const {
    if (v.size() != ambient_dim()) throw DimensionMismatch("quotient projection");
    return project(to_sparse(field(), v));
  }

  Vec<F> section(const Vec<F>& q) const {
    if (q.size() != dim()) throw DimensionMismatch("quotient section");
    Vec<F> out(ambient_dim(), field().zero());
    for (std::size_t i = 0; i < q.size(); ++i) out[basis_cols_[i]] = q[i];
    return out;
  }

  bool is_relation(const Vec<F>& v) const { return vec::is_zero(field(), project(v)); }

  /// Reduced relation rows, one per eliminated ambient coordinate.
  std::vector<Vec<F>> relation_basis() const {
    std::vector<Vec<F>> out;
    for (auto p : relations_.pivot_columns())
      out.push_back(to_dense(field(), relations_.row_at_pivot(p), ambient_dim()));
    return out;
  }

 private:
  void finish() {
    relations_.make_reduced();
    basis_cols_ = relations_.free_columns();
    slot_.assign(ambient_dim(), 0);
    for (std::size_t i = 0; i < basis_cols_.size(); ++i) slot_[basis_cols_[i]] = i;
  }

  Echelon<F> relations_;
  std::vector<std::size_t> basis_cols_;
  std::vector<std::size_t> slot_;
};

}  // namespace morext
