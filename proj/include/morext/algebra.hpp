#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "morext/linalg.hpp"

namespace morext {

class AssociativityViolation : public Error {
 public:
  AssociativityViolation(std::size_t i, std::size_t j, std::size_t k)
      : Error("associativity fails on basis triple (" + std::to_string(i) + "," +
              std::to_string(j) + "," + std::to_string(k) + ")"),
        i(i), j(j), k(k) {}
  std::size_t i, j, k;
};

class UnitViolation : public Error {
 public:
  explicit UnitViolation(std::size_t i)
      : Error("claimed unit fails on basis element " + std::to_string(i)), index(i) {}
  std::size_t index;
};

class NotAGroup : public Error {
 public:
  explicit NotAGroup(const std::string& why) : Error("not a group: " + why) {}
};

class ParentMismatch : public Error {
 public:
  ParentMismatch() : Error("elements belong to different algebras") {}
};

class NotASubalgebra : public Error {
 public:
  explicit NotASubalgebra(const std::string& why) : Error("not a unital subalgebra: " + why) {}
};

/// Finite-dimensional unital associative algebra given by structure
/// constants: product(i, j) holds the coordinates of e_i e_j.
template <Field F>
class Algebra {
 public:
  using value_type = typename F::value_type;
  using Ptr = std::shared_ptr<const Algebra>;

  /// Builds and validates; throws AssociativityViolation / UnitViolation.
  static Ptr create(const F& f, std::size_t dim, Vec<F> unit, std::vector<Vec<F>> products) {
    auto a = unchecked(f, dim, std::move(unit), std::move(products));
    a->validate();
    return a;
  }

  /// Builds without the O(d^4) validation; for constructions that are
  /// algebras by construction.
  static Ptr unchecked(const F& f, std::size_t dim, Vec<F> unit, std::vector<Vec<F>> products) {
    if (unit.size() != dim) throw DimensionMismatch("unit length");
    if (products.size() != dim * dim) throw DimensionMismatch("product table size");
    std::shared_ptr<Algebra> a(new Algebra(f, dim));
    a->unit_ = std::move(unit);
    a->products_.reserve(dim * dim);
    for (auto& p : products) {
      if (p.size() != dim) throw DimensionMismatch("product vector length");
      a->products_.push_back(to_sparse(f, p));
    }
    return a;
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vec<F>& unit() const { return unit_; }
  const SparseRow<F>& basis_product(std::size_t i, std::size_t j) const {
    return products_[i * dim_ + j];
  }
  Vec<F> basis(std::size_t i) const { return vec::unit(field_, dim_, i); }
  Vec<F> zero() const { return vec::zeros(field_, dim_); }

  Vec<F> mul(const Vec<F>& x, const Vec<F>& y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("algebra product");
    Vec<F> out(dim_, field_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(x[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (field_.is_zero(y[j])) continue;
        auto c = field_.mul(x[i], y[j]);
        for (const auto& [k, g] : products_[i * dim_ + j])
          out[k] = field_.add(out[k], field_.mul(c, g));
      }
    }
    return out;
  }

  Vec<F> power(const Vec<F>& x, unsigned n) const {
    if (n == 0) return unit_;
    Vec<F> acc = x;
    for (unsigned i = 1; i < n; ++i) acc = mul(acc, x);
    return acc;
  }

  /// Matrix of y -> x y.
  Matrix<F> left_mul(const Vec<F>& x) const {
    Matrix<F> m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_column(j, mul(x, basis(j)));
    return m;
  }
  /// Matrix of y -> y x.
  Matrix<F> right_mul(const Vec<F>& x) const {
    Matrix<F> m(field_, dim_, dim_);
    for (std::size_t j = 0; j < dim_; ++j) m.set_column(j, mul(basis(j), x));
    return m;
  }

  bool is_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        if (!vec::equal(field_, to_dense(field_, basis_product(i, j), dim_),
                        to_dense(field_, basis_product(j, i), dim_)))
          return false;
    return true;
  }

  void validate() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      auto e = basis(i);
      if (!vec::equal(field_, mul(unit_, e), e) || !vec::equal(field_, mul(e, unit_), e))
        throw UnitViolation(i);
    }
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          // (e_i e_j) e_k versus e_i (e_j e_k), both expanded sparsely.
          Vec<F> lhs(dim_, field_.zero()), rhs(dim_, field_.zero());
          for (const auto& [l, c] : basis_product(i, j))
            for (const auto& [m, g] : basis_product(l, k))
              lhs[m] = field_.add(lhs[m], field_.mul(c, g));
          for (const auto& [l, c] : basis_product(j, k))
            for (const auto& [m, g] : basis_product(i, l))
              rhs[m] = field_.add(rhs[m], field_.mul(c, g));
          if (!vec::equal(field_, lhs, rhs)) throw AssociativityViolation(i, j, k);
        }
  }

  /// A small generating set of basis vectors, chosen greedily in index order.
  const std::vector<Vec<F>>& generators() const;

  bool operator==(const Algebra& o) const {
    if (!(field_ == o.field_) || dim_ != o.dim_ || !vec::equal(field_, unit_, o.unit_))
      return false;
    for (std::size_t i = 0; i < dim_ * dim_; ++i)
      if (!vec::equal(field_, to_dense(field_, products_[i], dim_),
                      to_dense(field_, o.products_[i], dim_)))
        return false;
    return true;
  }

  std::vector<Vec<F>> product_table() const {
    std::vector<Vec<F>> out;
    out.reserve(dim_ * dim_);
    for (const auto& p : products_) out.push_back(to_dense(field_, p, dim_));
    return out;
  }

 private:
  Algebra(const F& f, std::size_t dim) : field_(f), dim_(dim) {}

  F field_;
  std::size_t dim_;
  Vec<F> unit_;
  std::vector<SparseRow<F>> products_;
  mutable std::once_flag generators_once_;
  mutable std::vector<Vec<F>> generators_;
};

template <Field F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

/// Element of a specific algebra; arithmetic checks the parent.
template <Field F>
class Element {
 public:
  Element(AlgebraPtr<F> parent, Vec<F> coords) : parent_(std::move(parent)), coords_(std::move(coords)) {
    if (coords_.size() != parent_->dim()) throw DimensionMismatch("element length");
  }

  const AlgebraPtr<F>& parent() const { return parent_; }
  const Vec<F>& coords() const { return coords_; }

  Element operator*(const Element& o) const {
    check(o);
    return Element(parent_, parent_->mul(coords_, o.coords_));
  }
  Element operator+(const Element& o) const {
    check(o);
    return Element(parent_, vec::add(parent_->field(), coords_, o.coords_));
  }
  Element operator-(const Element& o) const {
    check(o);
    return Element(parent_, vec::sub(parent_->field(), coords_, o.coords_));
  }
  Element pow(unsigned n) const { return Element(parent_, parent_->power(coords_, n)); }

  bool operator==(const Element& o) const {
    return parent_ == o.parent_ && vec::equal(parent_->field(), coords_, o.coords_);
  }

 private:
  void check(const Element& o) const {
    if (parent_ != o.parent_ && !(*parent_ == *o.parent_)) throw ParentMismatch();
  }

  AlgebraPtr<F> parent_;
  Vec<F> coords_;
};

template <Field F>
Element<F> multiply(const Element<F>& x, const Element<F>& y) {
  return x * y;
}

template <Field F>
Element<F> power(const Element<F>& x, unsigned n) {
  return x.pow(n);
}

template <Field F>
AlgebraPtr<F> validate_algebra(const F& f, std::size_t dim, Vec<F> unit, std::vector<Vec<F>> products) {
  return Algebra<F>::create(f, dim, std::move(unit), std::move(products));
}

/// Unital subalgebra B of an ambient algebra, stored by an RREF basis of
/// ambient coordinate vectors plus the induced structure constants.
template <Field F>
class SubalgebraEmbedding {
 public:
  /// Throws NotASubalgebra unless span(vectors) is a unital subalgebra.
  static SubalgebraEmbedding from_span(AlgebraPtr<F> ambient, const std::vector<Vec<F>>& vectors) {
    const F& f = ambient->field();
    const std::size_t d = ambient->dim();
    Echelon<F> e(f, d);
    for (const auto& v : vectors) {
      if (v.size() != d) throw DimensionMismatch("subalgebra vector length");
      e.insert(v);
    }
    SubalgebraEmbedding s;
    s.ambient_ = std::move(ambient);
    s.basis_ = e.basis();
    s.pivots_ = e.pivot_columns();
    if (!e.contains(s.ambient_->unit())) throw NotASubalgebra("unit not in span");
    const std::size_t db = s.basis_.size();
    std::vector<Vec<F>> products;
    products.reserve(db * db);
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < db; ++j) {
        auto p = s.ambient_->mul(s.basis_[i], s.basis_[j]);
        auto local = s.to_local(p);
        if (!local) throw NotASubalgebra("span not closed under multiplication");
        products.push_back(std::move(*local));
      }
    auto unit = s.to_local(s.ambient_->unit());
    s.induced_ = Algebra<F>::unchecked(f, db, std::move(*unit), std::move(products));
    return s;
  }

  const AlgebraPtr<F>& ambient() const { return ambient_; }
  const AlgebraPtr<F>& induced() const { return induced_; }
  const std::vector<Vec<F>>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  Vec<F> to_ambient(const Vec<F>& local) const {
    const F& f = ambient_->field();
    if (local.size() != basis_.size()) throw DimensionMismatch("subalgebra coordinates");
    Vec<F> out = ambient_->zero();
    for (std::size_t r = 0; r < basis_.size(); ++r) vec::axpy(f, out, local[r], basis_[r]);
    return out;
  }

  /// Coordinates in the subalgebra basis, or nullopt if outside the span.
  std::optional<Vec<F>> to_local(const Vec<F>& v) const {
    const F& f = ambient_->field();
    Vec<F> local;
    local.reserve(basis_.size());
    for (auto p : pivots_) local.push_back(v[p]);
    if (!vec::equal(f, to_ambient(local), v)) return std::nullopt;
    return local;
  }

  bool contains(const Vec<F>& v) const { return to_local(v).has_value(); }

  /// Ambient images of a generating set of the induced algebra.
  std::vector<Vec<F>> generators() const {
    std::vector<Vec<F>> out;
    for (const auto& g : induced_->generators()) out.push_back(to_ambient(g));
    return out;
  }

 private:
  AlgebraPtr<F> ambient_;
  AlgebraPtr<F> induced_;
  std::vector<Vec<F>> basis_;
  std::vector<std::size_t> pivots_;
};

/// RREF basis of the smallest unital subalgebra containing the generators:
/// the span of all words in the generators.
template <Field F>
std::vector<Vec<F>> closure_span(const Algebra<F>& a, const std::vector<Vec<F>>& generators) {
  const F& f = a.field();
  const std::size_t d = a.dim();
  Echelon<F> span(f, d);
  std::vector<Vec<F>> pending;
  auto add = [&](const Vec<F>& v) {
    if (span.insert(v)) pending.push_back(v);
  };
  add(a.unit());
  for (const auto& g : generators) {
    if (g.size() != d) throw DimensionMismatch("generator length");
    add(g);
  }
  // Every accepted vector is multiplied by each generator on both sides
  // exactly once; the span can grow at most d times.
  std::size_t processed = 0;
  while (!pending.empty()) {
    if (++processed > d) throw Error("subalgebra closure failed to stabilise");
    auto x = std::move(pending.back());
    pending.pop_back();
    for (const auto& g : generators) {
      add(a.mul(x, g));
      add(a.mul(g, x));
    }
  }
  return span.basis();
}

/// Smallest unital subalgebra containing the generators.
template <Field F>
SubalgebraEmbedding<F> subalgebra_closure(const AlgebraPtr<F>& a, const std::vector<Vec<F>>& generators) {
  return SubalgebraEmbedding<F>::from_span(a, closure_span(*a, generators));
}

template <Field F>
const std::vector<Vec<F>>& Algebra<F>::generators() const {
  std::call_once(generators_once_, [this] {
    std::vector<Vec<F>> gens;
    std::size_t have = closure_span(*this, gens).size();
    for (std::size_t i = 0; i < dim_ && have < dim_; ++i) {
      auto trial = gens;
      trial.push_back(basis(i));
      auto grown = closure_span(*this, trial).size();
      if (grown > have) {
        gens = std::move(trial);
        have = grown;
      }
    }
    generators_ = std::move(gens);
  });
  return generators_;
}

/// V_A(X): elements commuting with every vector of X (RREF basis).
template <Field F>
std::vector<Vec<F>> centralizer(const Algebra<F>& a, const std::vector<Vec<F>>& xs) {
  const F& f = a.field();
  const std::size_t d = a.dim();
  Echelon<F> eqs(f, d);
  for (const auto& x : xs) {
    auto m = a.left_mul(x) - a.right_mul(x);
    for (std::size_t r = 0; r < d; ++r) eqs.insert(m.row(r));
  }
  return span_basis(f, eqs.kernel(), d);
}

template <Field F>
std::vector<Vec<F>> center(const Algebra<F>& a) {
  return centralizer(a, a.generators());
}

template <Field F>
AlgebraPtr<F> opposite_algebra(const Algebra<F>& a) {
  const std::size_t d = a.dim();
  std::vector<Vec<F>> products(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      products[i * d + j] = to_dense(a.field(), a.basis_product(j, i), d);
  return Algebra<F>::unchecked(a.field(), d, a.unit(), std::move(products));
}

/// A (x) B over the ground field; basis e_i (x) f_j at index i * dim(B) + j.
template <Field F>
AlgebraPtr<F> tensor_product_algebra(const Algebra<F>& a, const Algebra<F>& b) {
  if (!(a.field() == b.field())) throw FieldMismatch();
  const F& f = a.field();
  const std::size_t da = a.dim(), db = b.dim(), d = da * db;
  std::vector<Vec<F>> products(d * d, Vec<F>(d, f.zero()));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t k = 0; k < da; ++k)
        for (std::size_t l = 0; l < db; ++l) {
          auto& out = products[(i * db + j) * d + (k * db + l)];
          for (const auto& [p, x] : a.basis_product(i, k))
            for (const auto& [q, y] : b.basis_product(j, l))
              out[p * db + q] = f.add(out[p * db + q], f.mul(x, y));
        }
  Vec<F> unit(d, f.zero());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < db; ++j) unit[i * db + j] = f.mul(a.unit()[i], b.unit()[j]);
  return Algebra<F>::unchecked(f, d, std::move(unit), std::move(products));
}

template <Field F>
AlgebraPtr<F> direct_product_algebra(const Algebra<F>& a, const Algebra<F>& b) {
  if (!(a.field() == b.field())) throw FieldMismatch();
  const F& f = a.field();
  const std::size_t da = a.dim(), db = b.dim(), d = da + db;
  std::vector<Vec<F>> products(d * d, Vec<F>(d, f.zero()));
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (const auto& [k, x] : a.basis_product(i, j)) products[i * d + j][k] = x;
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (const auto& [k, x] : b.basis_product(i, j)) products[(da + i) * d + da + j][da + k] = x;
  return Algebra<F>::unchecked(f, d, vec::concat<F>(a.unit(), b.unit()), std::move(products));
}

/// M_n(R); basis E_st (x) r_i at index (s * n + t) * dim(R) + i.
template <Field F>
AlgebraPtr<F> matrix_algebra(const Algebra<F>& r, std::size_t n) {
  if (n == 0) throw Error("matrix_algebra needs n >= 1");
  const F& f = r.field();
  const std::size_t dr = r.dim(), d = n * n * dr;
  auto idx = [&](std::size_t s, std::size_t t, std::size_t i) { return (s * n + t) * dr + i; };
  std::vector<Vec<F>> products(d * d, Vec<F>(d, f.zero()));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t i = 0; i < dr; ++i)
        for (std::size_t v = 0; v < n; ++v)
          for (std::size_t j = 0; j < dr; ++j) {
            auto& out = products[idx(s, t, i) * d + idx(t, v, j)];
            for (const auto& [k, x] : r.basis_product(i, j)) out[idx(s, v, k)] = x;
          }
  Vec<F> unit(d, f.zero());
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t i = 0; i < dr; ++i) unit[idx(s, s, i)] = r.unit()[i];
  return Algebra<F>::unchecked(f, d, std::move(unit), std::move(products));
}

template <Field F>
AlgebraPtr<F> ground_field_algebra(const F& f) {
  return Algebra<F>::unchecked(f, 1, {f.one()}, {{f.one()}});
}

/// k[t]/(t^m) on the monomial basis 1, t, ..., t^{m-1}.
template <Field F>
AlgebraPtr<F> truncated_poly_algebra(const F& f, std::size_t m) {
  if (m == 0) throw Error("truncated_poly_algebra needs m >= 1");
  std::vector<Vec<F>> products(m * m, Vec<F>(m, f.zero()));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i + j < m) products[i * m + j][i + j] = f.one();
  return Algebra<F>::unchecked(f, m, vec::unit(f, m, 0), std::move(products));
}

/// k[t]/(p(t)) for monic p given by its lower coefficients c_0..c_{m-1}
/// (p = t^m + c_{m-1} t^{m-1} + ... + c_0).
template <Field F>
AlgebraPtr<F> polynomial_quotient_algebra(const F& f, const Vec<F>& lower) {
  const std::size_t m = lower.size();
  if (m == 0) throw Error("polynomial_quotient_algebra needs degree >= 1");
  // Powers t^0 .. t^{2m-2} reduced mod p.
  std::vector<Vec<F>> pow(2 * m - 1, Vec<F>(m, f.zero()));
  for (std::size_t k = 0; k < m; ++k) pow[k][k] = f.one();
  for (std::size_t k = m; k < pow.size(); ++k) {
    // t^k = t * t^{k-1}
    Vec<F> shifted(m, f.zero());
    const auto& prev = pow[k - 1];
    for (std::size_t i = 0; i + 1 < m; ++i) shifted[i + 1] = prev[i];
    auto top = prev[m - 1];
    for (std::size_t i = 0; i < m; ++i) shifted[i] = f.sub(shifted[i], f.mul(top, lower[i]));
    pow[k] = shifted;
  }
  std::vector<Vec<F>> products(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) products[i * m + j] = pow[i + j];
  return Algebra<F>::unchecked(f, m, vec::unit(f, m, 0), std::move(products));
}

/// Group algebra from a Cayley table (table[g][h] = index of gh).
template <Field F>
AlgebraPtr<F> group_algebra(const std::vector<std::vector<std::size_t>>& table, const F& f) {
  const std::size_t n = table.size();
  if (n == 0) throw NotAGroup("empty table");
  for (const auto& row : table) {
    if (row.size() != n) throw NotAGroup("table is not square");
    for (auto x : row)
      if (x >= n) throw NotAGroup("entry out of range");
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) identity = e;
  }
  if (!identity) throw NotAGroup("no identity element");
  for (std::size_t g = 0; g < n; ++g) {
    bool has_inverse = false;
    for (std::size_t h = 0; h < n && !has_inverse; ++h)
      has_inverse = table[g][h] == *identity && table[h][g] == *identity;
    if (!has_inverse) throw NotAGroup("element " + std::to_string(g) + " has no inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) throw NotAGroup("not associative");
  std::vector<Vec<F>> products(n * n);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) products[g * n + h] = vec::unit(f, n, table[g][h]);
  return Algebra<F>::unchecked(f, n, vec::unit(f, n, *identity), std::move(products));
}

/// Cayley table of the cyclic group of order n.
inline std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  return t;
}

/// Re-expresses the algebra in the basis given by the columns of an
/// invertible matrix (new e'_j = sum_i P_ij e_i).
template <Field F>
AlgebraPtr<F> change_basis(const Algebra<F>& a, const Matrix<F>& p) {
  const F& f = a.field();
  const std::size_t d = a.dim();
  if (p.rows() != d || p.cols() != d) throw DimensionMismatch("change of basis");
  std::vector<Vec<F>> cols;
  for (std::size_t j = 0; j < d; ++j) cols.push_back(p.column(j));
  auto express = [&](const Vec<F>& v) {
    auto c = span_membership(f, cols, v);
    if (!c) throw Error("change of basis matrix is singular");
    return *c;
  };
  if (rank(p) != d) throw Error("change of basis matrix is singular");
  std::vector<Vec<F>> products;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) products.push_back(express(a.mul(cols[i], cols[j])));
  return Algebra<F>::unchecked(f, d, express(a.unit()), std::move(products));
}

}  // namespace morext
