#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "morext/module.hpp"

namespace morext {

template <Field F>
class Extension;

/// A (x)_B A as the quotient of A (x)_k A by span{x b (x) y - x (x) b y}.
/// Ambient coordinate (i, k) sits at index i * d + k. The relation span is
/// generated by b ranging over algebra generators of B alone, since
/// x b b' (x) y - x (x) b b' y telescopes through x b (x) b' y.
template <Field F>
class TensorOverB {
 public:
  TensorOverB(AlgebraPtr<F> a, const SubalgebraEmbedding<F>& b)
      : a_(std::move(a)), quotient_(a_->field(), a_->dim() * a_->dim(), relations(*a_, b)) {
    const F& f = a_->field();
    const std::size_t d = a_->dim(), q = quotient_.dim();
    mu_ = Matrix<F>(f, d, q);
    for (std::size_t p = 0; p < q; ++p) {
      auto [i, k] = pair_of(p);
      mu_.set_column(p, to_dense(f, a_->basis_product(i, k), d));
    }
    for (std::size_t j = 0; j < d; ++j) {
      Matrix<F> l(f, q, q), r(f, q, q);
      for (std::size_t p = 0; p < q; ++p) {
        auto [i, k] = pair_of(p);
        l.set_column(p, project_pure(to_dense(f, a_->basis_product(j, i), d), a_->basis(k)));
        r.set_column(p, project_pure(a_->basis(i), to_dense(f, a_->basis_product(k, j), d)));
      }
      left_.push_back(std::move(l));
      right_.push_back(std::move(r));
    }
  }

  const AlgebraPtr<F>& algebra() const { return a_; }
  const F& field() const { return a_->field(); }
  std::size_t dim() const { return quotient_.dim(); }
  std::size_t ambient_dim() const { return quotient_.ambient_dim(); }
  std::size_t relation_rank() const { return quotient_.relation_rank(); }
  const Quotient<F>& quotient() const { return quotient_; }

  /// Ambient basis pair (i, k) carried by quotient basis vector p.
  std::pair<std::size_t, std::size_t> pair_of(std::size_t p) const {
    auto c = quotient_.basis_column(p);
    return {c / a_->dim(), c % a_->dim()};
  }

  /// Ambient coordinates of x (x) y.
  SparseRow<F> pure(const Vec<F>& x, const Vec<F>& y) const {
    const F& f = field();
    const std::size_t d = a_->dim();
    SparseRow<F> out;
    for (std::size_t i = 0; i < d; ++i) {
      if (f.is_zero(x[i])) continue;
      for (std::size_t k = 0; k < d; ++k)
        if (!f.is_zero(y[k])) out.emplace_back(i * d + k, f.mul(x[i], y[k]));
    }
    return out;
  }
  /// Class of x (x) y.
  Vec<F> project_pure(const Vec<F>& x, const Vec<F>& y) const { return quotient_.project(pure(x, y)); }
  Vec<F> project(const Vec<F>& ambient) const { return quotient_.project(ambient); }
  Vec<F> section(const Vec<F>& t) const { return quotient_.section(t); }

  const Matrix<F>& left_basis_action(std::size_t j) const { return left_[j]; }
  const Matrix<F>& right_basis_action(std::size_t j) const { return right_[j]; }
  Matrix<F> left_action(const Vec<F>& a) const { return combine(left_, a); }
  Matrix<F> right_action(const Vec<F>& a) const { return combine(right_, a); }
  Vec<F> act_left(const Vec<F>& a, const Vec<F>& t) const { return left_action(a).apply(t); }
  Vec<F> act_right(const Vec<F>& t, const Vec<F>& a) const { return right_action(a).apply(t); }

  /// Multiplication map x (x) y -> x y.
  const Matrix<F>& mu() const { return mu_; }
  Vec<F> multiply(const Vec<F>& t) const { return mu_.apply(t); }

  /// x (x) y -> x u y; well defined iff u commutes with B, because the
  /// relation generator x b (x) y - x (x) b y maps to x (b u - u b) y.
  Vec<F> mu_u(const Vec<F>& t, const Vec<F>& u) const {
    const F& f = field();
    Vec<F> out = a_->zero();
    for (std::size_t p = 0; p < t.size(); ++p) {
      if (f.is_zero(t[p])) continue;
      auto [i, k] = pair_of(p);
      vec::axpy(f, out, t[p], a_->mul(a_->mul(a_->basis(i), u), a_->basis(k)));
    }
    return out;
  }

  Bimodule<F> as_bimodule() const { return Bimodule<F>(a_, a_, dim(), left_, right_); }

  /// Elements t with x t = t x for every x in the given spanning set.
  std::vector<Vec<F>> commutant(const std::vector<Vec<F>>& xs) const {
    Echelon<F> eqs(field(), dim());
    for (const auto& x : xs) {
      auto m = left_action(x) - right_action(x);
      for (std::size_t r = 0; r < dim(); ++r) eqs.insert(m.row(r));
    }
    return span_basis(field(), eqs.kernel(), dim());
  }

 private:
  static std::vector<SparseRow<F>> relations(const Algebra<F>& a, const SubalgebraEmbedding<F>& b) {
    const F& f = a.field();
    const std::size_t d = a.dim();
    std::vector<SparseRow<F>> rels;
    for (const auto& g : b.generators()) {
      auto lg = a.left_mul(g), rg = a.right_mul(g);
      for (std::size_t i = 0; i < d; ++i) {
        auto xg = rg.column(i);  // e_i g
        for (std::size_t k = 0; k < d; ++k) {
          auto gy = lg.column(k);  // g e_k
          Vec<F> row(d * d, f.zero());
          for (std::size_t s = 0; s < d; ++s) {
            row[s * d + k] = f.add(row[s * d + k], xg[s]);
            row[i * d + s] = f.sub(row[i * d + s], gy[s]);
          }
          auto sparse = to_sparse(f, row);
          if (!sparse.empty()) rels.push_back(std::move(sparse));
        }
      }
    }
    return rels;
  }

  Matrix<F> combine(const std::vector<Matrix<F>>& table, const Vec<F>& a) const {
    const F& f = field();
    Matrix<F> out(f, dim(), dim());
    for (std::size_t j = 0; j < a.size(); ++j)
      if (!f.is_zero(a[j])) out = out + table[j].scaled(a[j]);
    return out;
  }

  AlgebraPtr<F> a_;
  Quotient<F> quotient_;
  Matrix<F> mu_{field(), 0, 0};
  std::vector<Matrix<F>> left_;
  std::vector<Matrix<F>> right_;
};

/// Ring extension A/B with cached V = V_A(B), C = center of A and the
/// tensor square A (x)_B A. Immutable once built.
template <Field F>
class Extension {
 public:
  using Ptr = std::shared_ptr<const Extension>;

  static Ptr create(AlgebraPtr<F> a, SubalgebraEmbedding<F> b, std::string name = {}) {
    if (b.ambient() != a && !(*b.ambient() == *a)) throw Error("subalgebra lives in a different algebra");
    return Ptr(new Extension(std::move(a), std::move(b), std::move(name)));
  }
  static Ptr create(AlgebraPtr<F> a, const std::vector<Vec<F>>& b_span, std::string name = {}) {
    auto b = SubalgebraEmbedding<F>::from_span(a, b_span);
    return create(std::move(a), std::move(b), std::move(name));
  }

  const std::string& name() const { return name_; }
  const F& field() const { return a_->field(); }
  const AlgebraPtr<F>& a() const { return a_; }
  const Algebra<F>& algebra() const { return *a_; }
  const SubalgebraEmbedding<F>& b() const { return b_; }
  std::size_t dim() const { return a_->dim(); }

  const std::vector<Vec<F>>& centralizer_basis() const { return v_; }
  const std::vector<Vec<F>>& center_basis() const { return c_; }
  const TensorOverB<F>& tensor() const { return *t_; }

  bool in_centralizer(const Vec<F>& x) const {
    for (const auto& b : b_.basis())
      if (!vec::equal(field(), a_->mul(b, x), a_->mul(x, b))) return false;
    return true;
  }

  /// A as a B-B bimodule (restriction of the regular bimodule).
  Bimodule<F> a_over_b() const { return restrict_bimodule(regular_bimodule(a_), b_, b_); }
  /// B as a B-B bimodule.
  Bimodule<F> b_over_b() const { return regular_bimodule(b_.induced()); }

 private:
  Extension(AlgebraPtr<F> a, SubalgebraEmbedding<F> b, std::string name)
      : a_(std::move(a)), b_(std::move(b)), name_(std::move(name)) {
    v_ = centralizer(*a_, b_.generators());
    c_ = center(*a_);
    if (!span_contains(field(), v_, c_, dim())) throw Error("center not inside centralizer");
    t_ = std::make_unique<TensorOverB<F>>(a_, b_);
  }

  AlgebraPtr<F> a_;
  SubalgebraEmbedding<F> b_;
  std::string name_;
  std::vector<Vec<F>> v_;
  std::vector<Vec<F>> c_;
  std::unique_ptr<TensorOverB<F>> t_;
};

template <Field F>
using ExtensionPtr = std::shared_ptr<const Extension<F>>;

/// A = B (+) S with (b, s)(c, t) = (bc, bt + sc); B sits on the first
/// dim(B) coordinates.
template <Field F>
ExtensionPtr<F> trivial_extension_algebra(const AlgebraPtr<F>& b, const Bimodule<F>& s,
                                          std::string name = {}) {
  if (!(*s.left() == *b) || !(*s.right() == *b)) throw Error("S must be a B-B bimodule");
  if (!s.is_valid()) throw Error("S actions are inconsistent");
  const F& f = b->field();
  const std::size_t db = b->dim(), ds = s.dim(), d = db + ds;
  std::vector<Vec<F>> products(d * d, Vec<F>(d, f.zero()));
  for (std::size_t i = 0; i < db; ++i) {
    for (std::size_t j = 0; j < db; ++j)
      for (const auto& [k, x] : b->basis_product(i, j)) products[i * d + j][k] = x;
    for (std::size_t k = 0; k < ds; ++k) {
      auto left = s.left_basis_action(i).column(k);
      auto right = s.right_basis_action(i).column(k);
      for (std::size_t r = 0; r < ds; ++r) {
        products[i * d + db + k][db + r] = left[r];
        products[(db + k) * d + i][db + r] = right[r];
      }
    }
  }
  Vec<F> unit(d, f.zero());
  for (std::size_t i = 0; i < db; ++i) unit[i] = b->unit()[i];
  auto a = Algebra<F>::create(f, d, std::move(unit), std::move(products));
  std::vector<Vec<F>> b_span;
  for (std::size_t i = 0; i < db; ++i) b_span.push_back(a->basis(i));
  return Extension<F>::create(a, b_span, std::move(name));
}

}  // namespace morext
