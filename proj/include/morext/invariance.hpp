#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "morext/morita.hpp"

namespace morext {

/// One invariance statement checked on a transported extension.
struct InvarianceCheck {
  std::string name;
  bool ok = false;
  std::string detail;
};

namespace detail {

inline std::string dims_detail(std::size_t a, std::size_t b) {
  return std::to_string(a) + " -> " + std::to_string(b);
}

/// Left B-module _B X presented by the generators of B.
template <Field F>
Module<F> left_b_module(const Extension<F>& ext, const std::vector<Vec<F>>& span_of_x) {
  const F& f = ext.field();
  const auto& a = ext.algebra();
  const std::size_t d = a.dim();
  Echelon<F> basis(f, d);
  for (const auto& v : span_of_x) basis.insert(v);
  basis.make_reduced();
  auto vs = basis.basis();
  auto pivots = basis.pivot_columns();
  Module<F> m{f, vs.size(), {}};
  for (const auto& g : ext.b().generators()) {
    Matrix<F> act(f, vs.size(), vs.size());
    for (std::size_t c = 0; c < vs.size(); ++c) {
      auto img = a.mul(g, vs[c]);
      for (std::size_t r = 0; r < pivots.size(); ++r) act(r, c) = img[pivots[r]];
    }
    m.actions.push_back(std::move(act));
  }
  return m;
}

template <Field F>
std::vector<Vec<F>> all_basis(const Algebra<F>& a) {
  std::vector<Vec<F>> out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.basis(i));
  return out;
}

}  // namespace detail

/// _B A | _B B, the summand condition transferred between A/B and A'/B'.
template <Field F>
bool a_divides_b(const Extension<F>& ext) {
  return summand_witness(detail::left_b_module(ext, detail::all_basis(ext.algebra())),
                         detail::left_b_module(ext, ext.b().basis()))
      .has_value();
}

/// Runs every transfer statement between A/B and A'/B'.
template <Field F>
std::vector<InvarianceCheck> invariance_checks(const TransportedExtension<F>& te) {
  const auto& src = te.source();
  const auto& dst = te.prime();
  const F& f = src.field();
  const auto& a = src.algebra();
  const auto& ap = dst.algebra();
  std::vector<InvarianceCheck> out;
  auto phi = [&](const Vec<F>& v) { return phi_map(te, v); };

  // Centralizers: phi maps V_A(B) isomorphically onto V_{A'}(B') as rings.
  {
    const auto& v = src.centralizer_basis();
    std::vector<Vec<F>> img;
    bool ok = v.size() == dst.centralizer_basis().size();
    for (const auto& x : v) {
      img.push_back(phi(x));
      ok = ok && dst.in_centralizer(img.back());
    }
    ok = ok && span_dim(f, img, ap.dim()) == v.size();
    for (std::size_t i = 0; i < v.size() && ok; ++i)
      for (std::size_t j = 0; j < v.size() && ok; ++j)
        ok = vec::equal(f, phi(a.mul(v[i], v[j])), ap.mul(img[i], img[j]));
    out.push_back({"centralizer", ok, detail::dims_detail(v.size(), dst.centralizer_basis().size())});
  }
  // Centers, and V_B(B) -> V_{B'}(B').
  {
    const auto& c = src.center_basis();
    std::vector<Vec<F>> img;
    for (const auto& x : c) img.push_back(phi(x));
    bool ok = c.size() == dst.center_basis().size() && span_contains(f, dst.center_basis(), img, ap.dim()) &&
              span_dim(f, img, ap.dim()) == c.size();
    out.push_back({"center", ok, detail::dims_detail(c.size(), dst.center_basis().size())});

    auto zb = center(*src.b().induced());
    auto zbp = center(*dst.b().induced());
    std::vector<Vec<F>> zimg;
    bool zok = zb.size() == zbp.size();
    std::vector<Vec<F>> zbp_amb;
    for (const auto& z : zbp) zbp_amb.push_back(dst.b().to_ambient(z));
    for (const auto& z : zb) zimg.push_back(phi(src.b().to_ambient(z)));
    zok = zok && span_contains(f, zbp_amb, zimg, ap.dim()) && span_dim(f, zimg, ap.dim()) == zb.size();
    out.push_back({"subalgebra_center", zok, detail::dims_detail(zb.size(), zbp.size())});
  }
  // End(_B A_B) -> End(_{B'} A'_{B'}) as rings, carrying Hom(A, B) onto Hom(A', B').
  {
    auto ends = bimodule_endomorphisms(src);
    auto endsp = bimodule_endomorphisms(dst);
    std::vector<Matrix<F>> img;
    std::vector<Vec<F>> flat;
    bool ok = ends.size() == endsp.size();
    for (const auto& e : ends) {
      img.push_back(phi_end_map(te, e));
      flat.push_back(img.back().flat());
      ok = ok && is_b_bimodule_map(dst, img.back());
    }
    ok = ok && span_dim(f, flat, ap.dim() * ap.dim()) == ends.size();
    ok = ok && phi_end_map(te, Matrix<F>::identity(f, a.dim())) == Matrix<F>::identity(f, ap.dim());
    for (std::size_t i = 0; i < ends.size() && ok; ++i)
      for (std::size_t j = 0; j < ends.size() && ok; ++j) ok = phi_end_map(te, ends[i] * ends[j]) == img[i] * img[j];
    // Hom(_B A_B, _B B_B) inside End via the inclusion of B.
    auto to_b = bimodule_hom_space(src.a_over_b(), src.b_over_b());
    auto to_bp = bimodule_hom_space(dst.a_over_b(), dst.b_over_b());
    bool hom_ok = to_b.size() == to_bp.size();
    Matrix<F> iota = Matrix<F>::from_columns(f, src.b().basis(), a.dim());
    for (const auto& h : to_b) {
      auto e = phi_end_map(te, iota * h);
      for (std::size_t c = 0; c < e.cols() && hom_ok; ++c) hom_ok = dst.b().contains(e.column(c));
    }
    out.push_back({"endomorphisms", ok, detail::dims_detail(ends.size(), endsp.size())});
    out.push_back({"hom_to_subalgebra", hom_ok, detail::dims_detail(to_b.size(), to_bp.size())});
  }
  // Casimir spaces under psi; psi^{-1} round trips on the B-commutant.
  {
    auto cas = casimir_space(src, Commutant::a);
    auto casp = casimir_space(dst, Commutant::a);
    std::vector<Vec<F>> img;
    bool ok = cas.size() == casp.size();
    for (const auto& e : cas) img.push_back(psi_map(te, e));
    ok = ok && span_contains(f, casp, img, dst.tensor().dim()) && span_dim(f, img, dst.tensor().dim()) == cas.size();
    out.push_back({"casimir_a", ok, detail::dims_detail(cas.size(), casp.size())});
  }
  {
    auto cas = casimir_space(src, Commutant::b);
    auto casp = casimir_space(dst, Commutant::b);
    std::vector<Vec<F>> img;
    bool ok = cas.size() == casp.size();
    for (const auto& e : cas) {
      img.push_back(psi_map(te, e));
      ok = ok && vec::equal(f, psi_inverse_on_casimirB(te, img.back()), e);
    }
    ok = ok && span_contains(f, casp, img, dst.tensor().dim()) && span_dim(f, img, dst.tensor().dim()) == cas.size();
    for (const auto& e : casp) ok = ok && vec::equal(f, psi_map(te, psi_inverse_on_casimirB(te, e)), e);
    out.push_back({"casimir_b", ok, detail::dims_detail(cas.size(), casp.size())});
  }
  // Derivations A -> A, both round trips, and ad_v -> ad_{phi(v)}.
  {
    auto reg = regular_bimodule(src.a());
    auto sp = transport_bimodule(te.sandwich(), reg);
    auto der = derivation_space(src, DerivationFlags{true, false});
    auto derp = derivation_space(dst, sp.prime, DerivationFlags{true, false});
    bool ok = der.dim() == derp.dim();
    for (const auto& d : der.basis) {
      auto fwd = transport_derivation(te, reg, sp, d);
      ok = ok && is_derivation(dst, sp.prime, fwd, DerivationFlags{true, false}) &&
           pullback_derivation(te, reg, sp, fwd) == d;
    }
    for (const auto& d : derp.basis) ok = ok && transport_derivation(te, reg, sp, pullback_derivation(te, reg, sp, d)) == d;
    out.push_back({"derivations", ok, detail::dims_detail(der.dim(), derp.dim())});

    bool inner_ok = true;
    for (const auto& v : src.centralizer_basis())
      inner_ok = inner_ok && transport_derivation(te, reg, sp, inner_derivation(a, v)) == inner_derivation(ap, phi(v));
    out.push_back({"inner_derivations", inner_ok, ""});
  }
  {
    bool before = a_divides_b(src);
    bool after = a_divides_b(dst);
    out.push_back({"summand_transfer", !before || after,
                   std::string(before ? "holds" : "fails") + " -> " + (after ? "holds" : "fails")});
  }
  out.push_back({"alpha", alpha_consistency_check(te), ""});
  out.push_back({"progenerator", verify_progenerator(te.progenerator()), ""});
  return out;
}

}  // namespace morext
