#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "morext/classes.hpp"
#include "morext/progenerator.hpp"

namespace morext {

class ProductNotWellDefined : public Error {
 public:
  explicit ProductNotWellDefined(const std::string& where)
      : Error("product does not descend to the tensor quotient: " + where) {}
};

class UnsupportedClass : public Error {
 public:
  explicit UnsupportedClass(const std::string& kind) : Error("no transport formula for class " + kind) {}
};

class NotBCentral : public Error {
 public:
  NotBCentral() : Error("tensor element does not commute with the subalgebra") {}
};

template <Field F>
using ProgeneratorPtr = std::shared_ptr<const Progenerator<F>>;

/// N* (x)_B S (x)_B N for a B-B bimodule S. Ambient coordinate (r, x, u)
/// sits at (r * dim S + x) * dim N + u, with r over the N* basis.
template <Field F>
class Sandwich {
 public:
  Sandwich(ProgeneratorPtr<F> n, const Bimodule<F>& s)
      : n_(std::move(n)), ds_(s.dim()),
        quotient_(n_->field(), n_->dual_dim() * s.dim() * n_->dim(), relations(*n_, s)) {}

  const Progenerator<F>& progenerator() const { return *n_; }
  const F& field() const { return n_->field(); }
  std::size_t dim() const { return quotient_.dim(); }
  std::size_t ambient_dim() const { return quotient_.ambient_dim(); }
  std::size_t middle_dim() const { return ds_; }
  const Quotient<F>& quotient() const { return quotient_; }

  std::size_t index(std::size_t r, std::size_t x, std::size_t u) const {
    return (r * ds_ + x) * n_->dim() + u;
  }
  std::array<std::size_t, 3> split(std::size_t ambient) const {
    const std::size_t m = n_->dim();
    return {ambient / (ds_ * m), (ambient / m) % ds_, ambient % m};
  }
  /// Basis triple carried by quotient basis vector p.
  std::array<std::size_t, 3> triple_of(std::size_t p) const { return split(quotient_.basis_column(p)); }

  /// Class of rho (x) x (x) u, with rho in N* coordinates.
  Vec<F> project_triple(const Vec<F>& rho, const Vec<F>& x, const Vec<F>& u) const {
    return quotient_.project(pure(rho, x, u));
  }
  SparseRow<F> pure(const Vec<F>& rho, const Vec<F>& x, const Vec<F>& u) const {
    const F& f = field();
    SparseRow<F> out;
    for (std::size_t r = 0; r < rho.size(); ++r) {
      if (f.is_zero(rho[r])) continue;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (f.is_zero(x[i])) continue;
        auto c = f.mul(rho[r], x[i]);
        for (std::size_t k = 0; k < u.size(); ++k)
          if (!f.is_zero(u[k])) out.emplace_back(index(r, i, k), f.mul(c, u[k]));
      }
    }
    return out;
  }
  Vec<F> project(const SparseRow<F>& ambient) const { return quotient_.project(ambient); }
  SparseRow<F> section(const Vec<F>& q) const { return to_sparse(field(), quotient_.section(q)); }

 private:
  static std::vector<SparseRow<F>> relations(const Progenerator<F>& n, const Bimodule<F>& s) {
    if (!(*s.left() == *n.base()) || !(*s.right() == *n.base()))
      throw Error("sandwich needs a bimodule over the progenerator's base");
    const F& f = n.field();
    const std::size_t sd = n.dual_dim(), ds = s.dim(), m = n.dim();
    auto at = [&](std::size_t r, std::size_t x, std::size_t u) { return (r * ds + x) * m + u; };
    std::vector<SparseRow<F>> rels;
    for (const auto& g : n.base()->generators()) {
      Matrix<F> rg(f, sd, sd);
      for (std::size_t i = 0; i < g.size(); ++i)
        if (!f.is_zero(g[i])) rg = rg + n.dual_right_action(i).scaled(g[i]);
      auto lg = s.left_matrix(g), rsg = s.right_matrix(g), ng = n.left_matrix(g);
      detail::EquationBuilder<F> eq(f);
      for (std::size_t r = 0; r < sd; ++r)
        for (std::size_t x = 0; x < ds; ++x)
          for (std::size_t u = 0; u < m; ++u) {
            // rho g (x) x (x) u - rho (x) g x (x) u
            for (std::size_t t = 0; t < sd; ++t) eq.add(at(t, x, u), rg(t, r));
            for (std::size_t t = 0; t < ds; ++t) eq.add(at(r, t, u), f.neg(lg(t, x)));
            rels.push_back(eq.take());
            // rho (x) x g (x) u - rho (x) x (x) g u
            for (std::size_t t = 0; t < ds; ++t) eq.add(at(r, t, u), rsg(t, x));
            for (std::size_t t = 0; t < m; ++t) eq.add(at(r, x, t), f.neg(ng(t, u)));
            rels.push_back(eq.take());
          }
    }
    return rels;
  }

  ProgeneratorPtr<F> n_;
  std::size_t ds_;
  Quotient<F> quotient_;
};

/// R' = N* (x)_B R (x)_B N for B a subalgebra of R, with product
/// (rho (x) x (x) u)(sigma (x) y (x) v) = rho (x) x u^sigma y (x) v.
template <Field F>
class SandwichAlgebra {
 public:
  SandwichAlgebra(ProgeneratorPtr<F> n, AlgebraPtr<F> r, SubalgebraEmbedding<F> b)
      : n_(std::move(n)), r_(std::move(r)), b_(std::move(b)),
        carrier_(n_, restrict_bimodule(regular_bimodule(r_), b_, b_)) {
    if (!(*b_.induced() == *n_->base())) throw Error("progenerator lives over a different subalgebra");
    const F& f = r_->field();
    const std::size_t d = carrier_.dim();
    std::vector<Vec<F>> products;
    products.reserve(d * d);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = 0; q < d; ++q)
        products.push_back(carrier_.project(triple_product(carrier_.triple_of(p), carrier_.triple_of(q))));
    check_well_defined();
    Vec<F> unit(d, f.zero());
    for (const auto& pair : n_->dual_pairs())
      unit = vec::add(f, unit, carrier_.project_triple(n_->dual_coords(pair.functional), r_->unit(), pair.element));
    prime_ = Algebra<F>::create(f, d, std::move(unit), std::move(products));
  }

  const Progenerator<F>& progenerator() const { return *n_; }
  const ProgeneratorPtr<F>& progenerator_ptr() const { return n_; }
  const AlgebraPtr<F>& original() const { return r_; }
  const SubalgebraEmbedding<F>& base_embedding() const { return b_; }
  const AlgebraPtr<F>& algebra() const { return prime_; }
  const Sandwich<F>& carrier() const { return carrier_; }
  std::size_t dim() const { return carrier_.dim(); }

  /// u^rho as an element of R.
  Vec<F> pairing(std::size_t u, std::size_t rho) const {
    return b_.to_ambient(n_->evaluate(vec::unit(field(), n_->dim(), u), n_->dual_basis()[rho]));
  }
  Vec<F> pairing(const Vec<F>& u, const Vec<F>& rho) const {
    const F& f = field();
    Vec<F> out = r_->zero();
    for (std::size_t a = 0; a < u.size(); ++a) {
      if (f.is_zero(u[a])) continue;
      for (std::size_t s = 0; s < rho.size(); ++s)
        if (!f.is_zero(rho[s])) vec::axpy(f, out, f.mul(u[a], rho[s]), pairing(a, s));
    }
    return out;
  }

  /// Class of rho (x) x (x) u in R' coordinates.
  Vec<F> element(const Vec<F>& rho, const Vec<F>& x, const Vec<F>& u) const {
    return carrier_.project_triple(rho, x, u);
  }
  Vec<F> element(const Matrix<F>& functional, const Vec<F>& x, const Vec<F>& u) const {
    return element(n_->dual_coords(functional), x, u);
  }

  const F& field() const { return r_->field(); }

 private:
  SparseRow<F> triple_product(const std::array<std::size_t, 3>& p, const std::array<std::size_t, 3>& q) const {
    const F& f = field();
    auto z = r_->mul(r_->mul(r_->basis(p[1]), pairing(p[2], q[0])), r_->basis(q[1]));
    SparseRow<F> out;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (!f.is_zero(z[i])) out.emplace_back(carrier_.index(p[0], i, q[2]), z[i]);
    return out;
  }

  /// Relation vectors multiplied by basis representatives must vanish.
  void check_well_defined() const {
    const F& f = field();
    const std::size_t d = carrier_.dim();
    auto product_of = [&](const SparseRow<F>& lhs, const SparseRow<F>& rhs) {
      Vec<F> acc(d, f.zero());
      for (const auto& [a, x] : lhs)
        for (const auto& [b, y] : rhs)
          vec::axpy(f, acc, f.mul(x, y), carrier_.project(triple_product(carrier_.split(a), carrier_.split(b))));
      return acc;
    };
    for (const auto& rel : carrier_.quotient().relation_basis()) {
      auto sparse = to_sparse(f, rel);
      for (std::size_t p = 0; p < d; ++p) {
        SparseRow<F> rep{{carrier_.quotient().basis_column(p), f.one()}};
        if (!vec::is_zero(f, product_of(sparse, rep)) || !vec::is_zero(f, product_of(rep, sparse)))
          throw ProductNotWellDefined("sandwich algebra");
      }
    }
  }

  ProgeneratorPtr<F> n_;
  AlgebraPtr<F> r_;
  SubalgebraEmbedding<F> b_;
  Sandwich<F> carrier_;
  AlgebraPtr<F> prime_;
};

/// S' = N* (x)_B S (x)_B N for an R-R bimodule S, as an R'-R' bimodule.
template <Field F>
struct TransportedBimodule {
  Sandwich<F> carrier;
  Bimodule<F> prime;
};

template <Field F>
TransportedBimodule<F> transport_bimodule(const SandwichAlgebra<F>& rp, const Bimodule<F>& s) {
  const F& f = rp.field();
  const auto& r = rp.original();
  if (!(*s.left() == *r) || !(*s.right() == *r)) throw Error("bimodule over a different algebra");
  Sandwich<F> carrier(rp.progenerator_ptr(), restrict_bimodule(s, rp.base_embedding(), rp.base_embedding()));
  const std::size_t dp = rp.dim(), ds = carrier.dim();
  // (rho (x) x (x) u) . (sigma (x) s (x) v) = rho (x) x u^sigma s (x) v
  auto left_ambient = [&](const std::array<std::size_t, 3>& a, const std::array<std::size_t, 3>& t) {
    auto lifted = s.act_left(r->mul(r->basis(a[1]), rp.pairing(a[2], t[0])), vec::unit(f, s.dim(), t[1]));
    return carrier.pure(vec::unit(f, rp.progenerator().dual_dim(), a[0]), lifted,
                        vec::unit(f, rp.progenerator().dim(), t[2]));
  };
  // (rho (x) s (x) u) . (sigma (x) y (x) v) = rho (x) s u^sigma y (x) v
  auto right_ambient = [&](const std::array<std::size_t, 3>& t, const std::array<std::size_t, 3>& a) {
    auto lifted = s.act_right(vec::unit(f, s.dim(), t[1]), r->mul(rp.pairing(t[2], a[0]), r->basis(a[1])));
    return carrier.pure(vec::unit(f, rp.progenerator().dual_dim(), t[0]), lifted,
                        vec::unit(f, rp.progenerator().dim(), a[2]));
  };
  std::vector<Matrix<F>> left, right;
  for (std::size_t p = 0; p < dp; ++p) {
    auto a = rp.carrier().triple_of(p);
    Matrix<F> l(f, ds, ds), rr(f, ds, ds);
    for (std::size_t q = 0; q < ds; ++q) {
      auto t = carrier.triple_of(q);
      l.set_column(q, carrier.project(left_ambient(a, t)));
      rr.set_column(q, carrier.project(right_ambient(t, a)));
    }
    left.push_back(std::move(l));
    right.push_back(std::move(rr));
  }
  // Relations of S' acted on by A' representatives must vanish.
  for (const auto& rel : carrier.quotient().relation_basis()) {
    auto sparse = to_sparse(f, rel);
    for (std::size_t p = 0; p < dp; ++p) {
      auto a = rp.carrier().triple_of(p);
      Vec<F> l(ds, f.zero()), rr(ds, f.zero());
      for (const auto& [c, x] : sparse) {
        vec::axpy(f, l, x, carrier.project(left_ambient(a, carrier.split(c))));
        vec::axpy(f, rr, x, carrier.project(right_ambient(carrier.split(c), a)));
      }
      if (!vec::is_zero(f, l) || !vec::is_zero(f, rr)) throw ProductNotWellDefined("transported bimodule");
    }
  }
  Bimodule<F> prime(rp.algebra(), rp.algebra(), ds, std::move(left), std::move(right));
  return {std::move(carrier), std::move(prime)};
}

/// A'/B' = N* (x)_B A (x)_B N / N* (x)_B B (x)_B N with the maps phi and psi.
template <Field F>
class TransportedExtension {
 public:
  TransportedExtension(ExtensionPtr<F> ext, Progenerator<F> n)
      : src_(std::move(ext)), n_(std::make_shared<const Progenerator<F>>(std::move(n))),
        a_(n_, src_->a(), src_->b()) {
    const F& f = src_->field();
    const auto& carrier = a_.carrier();
    // B' as the image of the triples rho (x) b (x) u.
    std::vector<Vec<F>> b_span;
    for (std::size_t r = 0; r < n_->dual_dim(); ++r)
      for (const auto& b : src_->b().basis())
        for (std::size_t u = 0; u < n_->dim(); ++u)
          b_span.push_back(carrier.project_triple(vec::unit(f, n_->dual_dim(), r), b, vec::unit(f, n_->dim(), u)));
    prime_ = Extension<F>::create(a_.algebra(), span_basis(f, b_span, a_.dim()),
                                  src_->name().empty() ? std::string() : src_->name() + "'");

    const std::size_t d = src_->dim();
    phi_ = Matrix<F>(f, a_.dim(), d);
    for (std::size_t x = 0; x < d; ++x) phi_.set_column(x, phi_raw(src_->algebra().basis(x)));

    check_dimensions();
    build_psi();
  }

  const Extension<F>& source() const { return *src_; }
  const ExtensionPtr<F>& source_ptr() const { return src_; }
  const Extension<F>& prime() const { return *prime_; }
  const ExtensionPtr<F>& prime_ptr() const { return prime_; }
  const Progenerator<F>& progenerator() const { return *n_; }
  const SandwichAlgebra<F>& sandwich() const { return a_; }
  const Matrix<F>& phi() const { return phi_; }
  const Matrix<F>& psi() const { return psi_; }
  /// Whether psi kills every relation of A (x)_B A (reported, never assumed).
  bool psi_well_defined() const { return psi_well_defined_; }

  /// dim N* (x)_B B (x)_B N, dim End_B(N), dim N (x)_{B'} N*.
  std::size_t eta_source_dim() const { return eta_dim_; }
  std::size_t end_n_dim() const { return end_n_dim_; }
  std::size_t xi_source_dim() const { return xi_dim_; }

  /// x (x) y -> the element sum_{j,k} (f_j (x) x (x) n_k) (x) (g_k (x) y (x) m_j) of A' (x)_{B'} A',
  /// on ambient pairs.
  Vec<F> psi_pure(const Vec<F>& x, const Vec<F>& y) const {
    const F& f = src_->field();
    const auto& t = prime_->tensor();
    Vec<F> out(t.dim(), f.zero());
    for (const auto& dp : n_->dual_pairs())
      for (const auto& gp : n_->gen_pairs()) {
        auto left = a_.element(dp.functional, x, gp.element);
        auto right = a_.element(gp.functional, y, dp.element);
        out = vec::add(f, out, t.project_pure(left, right));
      }
    return out;
  }

 private:
  Vec<F> phi_raw(const Vec<F>& x) const {
    const F& f = src_->field();
    Vec<F> out(a_.dim(), f.zero());
    for (const auto& p : n_->dual_pairs()) out = vec::add(f, out, a_.element(p.functional, x, p.element));
    return out;
  }

  void check_dimensions() {
    const F& f = src_->field();
    eta_dim_ = Sandwich<F>(n_, regular_bimodule(n_->base())).dim();
    end_n_dim_ = hom_space(n_->as_module(), n_->as_module()).size();
    if (eta_dim_ != prime_->b().dim() || end_n_dim_ != eta_dim_)
      throw Error("N* (x)_B N, End_B(N) and B' disagree in dimension");

    // N (x)_{B'} N*, with B' spanned by the triples rho (x) b (x) u acting by
    // n . (rho (x) b (x) u) = (n^rho b) u and (rho (x) b (x) u) . sigma = rho (b u^sigma).
    const auto& n = *n_;
    const auto& b = *src_->b().induced();
    const std::size_t m = n.dim(), s = n.dual_dim(), db = b.dim();
    auto dual_act = [&](const Vec<F>& bb) {
      Matrix<F> out(f, s, s);
      for (std::size_t i = 0; i < db; ++i)
        if (!f.is_zero(bb[i])) out = out + n.dual_right_action(i).scaled(bb[i]);
      return out;
    };
    std::vector<SparseRow<F>> rels;
    detail::EquationBuilder<F> eq(f);
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t u = 0; u < m; ++u) {
          std::vector<Vec<F>> na(m), sigma(s);
          for (std::size_t a = 0; a < m; ++a)
            na[a] = n.act(b.mul(n.evaluate(vec::unit(f, m, a), n.dual_basis()[r]), b.basis(i)), vec::unit(f, m, u));
          for (std::size_t c = 0; c < s; ++c)
            sigma[c] = dual_act(b.mul(b.basis(i), n.evaluate(vec::unit(f, m, u), n.dual_basis()[c]))).column(r);
          for (std::size_t a = 0; a < m; ++a)
            for (std::size_t c = 0; c < s; ++c) {
              for (std::size_t t = 0; t < m; ++t) eq.add(t * s + c, na[a][t]);
              for (std::size_t t = 0; t < s; ++t) eq.add(a * s + t, f.neg(sigma[c][t]));
              rels.push_back(eq.take());
            }
        }
    xi_dim_ = Quotient<F>(f, m * s, rels).dim();
    if (xi_dim_ != db) throw Error("N (x)_{B'} N* and B disagree in dimension");
  }

  void build_psi() {
    const F& f = src_->field();
    const auto& a = src_->algebra();
    const auto& t = src_->tensor();
    const std::size_t d = a.dim();
    std::vector<Vec<F>> ambient(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) ambient[i * d + k] = psi_pure(a.basis(i), a.basis(k));
    psi_ = Matrix<F>(f, prime_->tensor().dim(), t.dim());
    for (std::size_t p = 0; p < t.dim(); ++p) psi_.set_column(p, ambient[t.quotient().basis_column(p)]);
    psi_well_defined_ = true;
    for (const auto& rel : t.quotient().relation_basis()) {
      Vec<F> img(prime_->tensor().dim(), f.zero());
      for (std::size_t c = 0; c < rel.size(); ++c)
        if (!f.is_zero(rel[c])) vec::axpy(f, img, rel[c], ambient[c]);
      if (!vec::is_zero(f, img)) {
        psi_well_defined_ = false;
        break;
      }
    }
  }

  ExtensionPtr<F> src_;
  ProgeneratorPtr<F> n_;
  SandwichAlgebra<F> a_;
  ExtensionPtr<F> prime_;
  Matrix<F> phi_{src_->field(), 0, 0};
  Matrix<F> psi_{src_->field(), 0, 0};
  bool psi_well_defined_ = false;
  std::size_t eta_dim_ = 0, end_n_dim_ = 0, xi_dim_ = 0;
};

template <Field F>
TransportedExtension<F> transport_extension(const ExtensionPtr<F>& ext, Progenerator<F> n) {
  return TransportedExtension<F>(ext, std::move(n));
}

/// phi(x) = sum_j f_j (x) x (x) m_j.
template <Field F>
Vec<F> phi_map(const TransportedExtension<F>& te, const Vec<F>& x) {
  return te.phi().apply(x);
}

/// 1 (x) eta (x) 1 for eta in End(_B A_B).
template <Field F>
Matrix<F> phi_end_map(const TransportedExtension<F>& te, const Matrix<F>& eta) {
  if (!is_b_bimodule_map(te.source(), eta)) throw Error("endomorphism is not B-B linear");
  const F& f = te.source().field();
  const auto& sw = te.sandwich();
  const auto& n = te.progenerator();
  Matrix<F> out(f, sw.dim(), sw.dim());
  for (std::size_t p = 0; p < sw.dim(); ++p) {
    auto [r, x, u] = sw.carrier().triple_of(p);
    out.set_column(p, sw.element(vec::unit(f, n.dual_dim(), r), eta.column(x), vec::unit(f, n.dim(), u)));
  }
  return out;
}

template <Field F>
Vec<F> psi_map(const TransportedExtension<F>& te, const Vec<F>& w) {
  return te.psi().apply(w);
}

/// The contraction sum_l n_l^rho x u^sigma (x) y v^{g_l} on a representative
/// of w' in (A' (x)_{B'} A')^{B'}.
template <Field F>
Vec<F> psi_inverse_on_casimirB(const TransportedExtension<F>& te, const Vec<F>& w) {
  const auto& pe = te.prime();
  const auto& tp = pe.tensor();
  const F& f = pe.field();
  for (const auto& b : pe.b().basis())
    if (!vec::equal(f, tp.act_left(b, w), tp.act_right(w, b))) throw NotBCentral();
  const auto& src = te.source();
  const auto& a = src.algebra();
  const auto& sw = te.sandwich();
  const auto& n = te.progenerator();
  const auto& emb = src.b();
  Vec<F> out(src.tensor().dim(), f.zero());
  auto rep = tp.section(w);
  for (std::size_t c = 0; c < rep.size(); ++c) {
    if (f.is_zero(rep[c])) continue;
    auto [rho, x, u] = sw.carrier().triple_of(c / sw.dim());
    auto [sigma, y, v] = sw.carrier().triple_of(c % sw.dim());
    auto middle = a.mul(a.basis(x), sw.pairing(u, sigma));
    for (const auto& gp : n.gen_pairs()) {
      auto lhs = a.mul(emb.to_ambient(n.evaluate(gp.element, n.dual_basis()[rho])), middle);
      auto rhs = a.mul(a.basis(y), emb.to_ambient(n.evaluate(vec::unit(f, n.dim(), v), gp.functional)));
      vec::axpy(f, out, rep[c], src.tensor().project_pure(lhs, rhs));
    }
  }
  return out;
}

/// D' = 1 (x) D (x) 1 : A' -> S' for D in Der_B(A, S).
template <Field F>
Matrix<F> transport_derivation(const TransportedExtension<F>& te, const Bimodule<F>& s,
                               const TransportedBimodule<F>& sp, const Matrix<F>& d) {
  if (!is_derivation(te.source(), s, d, DerivationFlags{true, false}))
    throw Error("input is not a B-derivation");
  const F& f = te.source().field();
  const auto& sw = te.sandwich();
  const auto& n = te.progenerator();
  Matrix<F> out(f, sp.carrier.dim(), sw.dim());
  for (std::size_t p = 0; p < sw.dim(); ++p) {
    auto [r, x, u] = sw.carrier().triple_of(p);
    out.set_column(p, sp.carrier.project_triple(vec::unit(f, n.dual_dim(), r), d.column(x),
                                                vec::unit(f, n.dim(), u)));
  }
  return out;
}

/// D(x) = sum_{k,l} n_k^rho s u^{g_l} where D'(g_k (x) x (x) n_l) = sum rho (x) s (x) u.
template <Field F>
Matrix<F> pullback_derivation(const TransportedExtension<F>& te, const Bimodule<F>& s,
                              const TransportedBimodule<F>& sp, const Matrix<F>& dp) {
  if (!is_derivation(te.prime(), sp.prime, dp, DerivationFlags{true, false}))
    throw Error("input is not a B'-derivation");
  const F& f = te.source().field();
  const auto& a = te.source().algebra();
  const auto& sw = te.sandwich();
  const auto& n = te.progenerator();
  const auto& emb = te.source().b();
  Matrix<F> out(f, s.dim(), a.dim());
  for (std::size_t x = 0; x < a.dim(); ++x) {
    Vec<F> col(s.dim(), f.zero());
    for (const auto& gk : n.gen_pairs())
      for (const auto& gl : n.gen_pairs()) {
        auto image = dp.apply(sw.element(gk.functional, a.basis(x), gl.element));
        for (const auto& [c, coef] : sp.carrier.section(image)) {
          auto [rho, sx, u] = sp.carrier.split(c);
          auto left = emb.to_ambient(n.evaluate(gk.element, n.dual_basis()[rho]));
          auto right = emb.to_ambient(n.evaluate(vec::unit(f, n.dim(), u), gl.functional));
          vec::axpy(f, col, coef, s.act_left(left, s.act_right(vec::unit(f, s.dim(), sx), right)));
        }
      }
    out.set_column(x, col);
  }
  return out;
}

/// Pushes a class witness from A/B to A'/B' by the transport formulas.
template <Field F>
Certificate<F> transport_certificate(const TransportedExtension<F>& te, const Certificate<F>& cert) {
  const F& f = te.source().field();
  auto phi = [&](const Vec<F>& v) { return phi_map(te, v); };
  auto psi = [&](const Vec<F>& w) { return psi_map(te, w); };
  if (auto c = std::get_if<SeparableCert<F>>(&cert)) return SeparableCert<F>{psi(c->e)};
  if (auto c = std::get_if<StronglySeparableCert<F>>(&cert)) {
    StronglySeparableCert<F> out;
    for (const auto& v : c->v) out.v.push_back(phi(v));
    for (const auto& e : c->e) out.e.push_back(psi(e));
    return out;
  }
  if (auto c = std::get_if<DepthTwoCert<F>>(&cert)) {
    DepthTwoCert<F> out;
    out.side = c->side;
    for (const auto& t : c->t) out.t.push_back(psi(t));
    for (const auto& b : c->beta) out.beta.push_back(phi_end_map(te, b));
    return out;
  }
  if (auto c = std::get_if<LiberalCert<F>>(&cert)) {
    LiberalCert<F> out;
    for (const auto& v : c->v) out.v.push_back(phi(v));
    return out;
  }
  if (auto c = std::get_if<WeaklySeparableCert<F>>(&cert)) {
    auto reg = regular_bimodule(te.source().a());
    TransportedBimodule<F> self{te.sandwich().carrier(), regular_bimodule(te.prime().a())};
    WeaklySeparableCert<F> out;
    for (const auto& d : c->derivations) out.derivations.push_back(transport_derivation(te, reg, self, d));
    for (const auto& v : c->inner) out.inner.push_back(phi(v));
    return out;
  }
  if (auto c = std::get_if<TrivialCert<F>>(&cert)) {
    const auto& sw = te.sandwich();
    const auto& n = te.progenerator();
    std::vector<Vec<F>> s;
    for (std::size_t r = 0; r < n.dual_dim(); ++r)
      for (const auto& x : c->complement)
        for (std::size_t u = 0; u < n.dim(); ++u)
          s.push_back(sw.element(vec::unit(f, n.dual_dim(), r), x, vec::unit(f, n.dim(), u)));
    return TrivialCert<F>{span_basis(f, s, sw.dim())};
  }
  throw UnsupportedClass(certificate_kind(cert));
}

/// Builds A (x)_B N, maps each A' basis vector rho (x) x (x) u to the
/// endomorphism y (x) v -> y v^rho x (x) u and checks that this is a
/// well-defined bijective ring map onto End(_A A (x)_B N).
template <Field F>
bool alpha_consistency_check(const TransportedExtension<F>& te) {
  const auto& src = te.source();
  const F& f = src.field();
  const auto& a = src.algebra();
  const auto& n = te.progenerator();
  const auto& sw = te.sandwich();
  const std::size_t d = a.dim(), m = n.dim();
  std::vector<SparseRow<F>> rels;
  for (const auto& g : src.b().generators()) {
    auto lg = n.left_matrix(*src.b().to_local(g));
    auto rg = a.right_mul(g);
    detail::EquationBuilder<F> eq(f);
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t t = 0; t < d; ++t) eq.add(t * m + u, rg(t, x));
        for (std::size_t t = 0; t < m; ++t) eq.add(x * m + t, f.neg(lg(t, u)));
        rels.push_back(eq.take());
      }
  }
  Quotient<F> x_n(f, d * m, rels);
  const std::size_t w = x_n.dim();
  Module<F> mod{f, w, {}};
  for (const auto& g : a.generators()) {
    Matrix<F> act(f, w, w);
    for (std::size_t c = 0; c < w; ++c) {
      auto col = x_n.basis_column(c);
      auto y = a.mul(g, a.basis(col / m));
      SparseRow<F> amb;
      for (std::size_t t = 0; t < d; ++t)
        if (!f.is_zero(y[t])) amb.emplace_back(t * m + col % m, y[t]);
      act.set_column(c, x_n.project(amb));
    }
    mod.actions.push_back(std::move(act));
  }
  const std::size_t end_dim = hom_space(mod, mod).size();

  // y (x) v -> y v^rho x (x) u on an ambient basis pair.
  auto image = [&](std::size_t rho, std::size_t x, std::size_t u, std::size_t amb) {
    auto y = a.basis(amb / m);
    auto z = a.mul(a.mul(y, sw.pairing(amb % m, rho)), a.basis(x));
    SparseRow<F> out;
    for (std::size_t t = 0; t < d; ++t)
      if (!f.is_zero(z[t])) out.emplace_back(t * m + u, z[t]);
    return x_n.project(out);
  };
  std::vector<Matrix<F>> alpha;
  for (std::size_t p = 0; p < sw.dim(); ++p) {
    auto [rho, x, u] = sw.carrier().triple_of(p);
    Matrix<F> mp(f, w, w);
    for (std::size_t c = 0; c < w; ++c) mp.set_column(c, image(rho, x, u, x_n.basis_column(c)));
    for (const auto& rel : x_n.relation_basis()) {
      Vec<F> acc(w, f.zero());
      for (std::size_t c = 0; c < rel.size(); ++c)
        if (!f.is_zero(rel[c])) vec::axpy(f, acc, rel[c], image(rho, x, u, c));
      if (!vec::is_zero(f, acc)) return false;
    }
    if (!is_module_map(mp, mod, mod)) return false;
    alpha.push_back(std::move(mp));
  }
  std::vector<Vec<F>> flat;
  for (const auto& mp : alpha) flat.push_back(mp.flat());
  if (alpha.size() != end_dim || span_dim(f, flat, w * w) != end_dim) return false;
  const auto& ap = te.prime().algebra();
  auto combine = [&](const Vec<F>& coeffs) {
    Matrix<F> out(f, w, w);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!f.is_zero(coeffs[i])) out = out + alpha[i].scaled(coeffs[i]);
    return out;
  };
  if (!(combine(ap.unit()) == Matrix<F>::identity(f, w))) return false;
  for (std::size_t p = 0; p < alpha.size(); ++p)
    for (std::size_t q = 0; q < alpha.size(); ++q)
      if (!(combine(to_dense(f, ap.basis_product(p, q), ap.dim())) == alpha[q] * alpha[p])) return false;
  return true;
}

/// True when the linear map p (columns = images of basis vectors) is a
/// unital multiplicative map src -> dst.
template <Field F>
bool is_algebra_homomorphism(const Algebra<F>& src, const Algebra<F>& dst, const Matrix<F>& p) {
  const F& f = src.field();
  if (p.rows() != dst.dim() || p.cols() != src.dim()) return false;
  if (!vec::equal(f, p.apply(src.unit()), dst.unit())) return false;
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j)
      if (!vec::equal(f, p.apply(to_dense(f, src.basis_product(i, j), src.dim())),
                      dst.mul(p.column(i), p.column(j))))
        return false;
  return true;
}

/// E_st (x) x -> f_s (x) x (x) m_t from matrix_algebra(A, n) to A', with n
/// the number of dual pairs; an isomorphism for free progenerators.
template <Field F>
Matrix<F> matrix_alignment(const TransportedExtension<F>& te) {
  const auto& a = te.source().algebra();
  const auto& n = te.progenerator();
  const std::size_t k = n.dual_pairs().size(), d = a.dim();
  Matrix<F> out(a.field(), te.sandwich().dim(), k * k * d);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t i = 0; i < d; ++i)
        out.set_column((s * k + t) * d + i, te.sandwich().element(n.dual_pairs()[s].functional, a.basis(i),
                                                                  n.dual_pairs()[t].element));
  return out;
}

}  // namespace morext
