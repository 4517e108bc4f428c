#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "morext/certificate.hpp"
#include "morext/derivation.hpp"

namespace morext {

enum class Commutant { a, b };

/// (A (x)_B A)^A or (A (x)_B A)^B.
template <Field F>
std::vector<Vec<F>> casimir_space(const Extension<F>& ext, Commutant over) {
  return ext.tensor().commutant(over == Commutant::a ? ext.algebra().generators() : ext.b().generators());
}

/// End(_B A_B) as d x d matrices.
template <Field F>
std::vector<Matrix<F>> bimodule_endomorphisms(const Extension<F>& ext) {
  auto m = ext.a_over_b();
  return bimodule_hom_space(m, m);
}

template <Field F>
bool is_b_bimodule_map(const Extension<F>& ext, const Matrix<F>& beta) {
  const Algebra<F>& a = ext.algebra();
  if (beta.rows() != a.dim() || beta.cols() != a.dim()) return false;
  for (const auto& b : ext.b().basis())
    if (!(beta * a.left_mul(b) == a.left_mul(b) * beta) || !(beta * a.right_mul(b) == a.right_mul(b) * beta))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Decision procedures
// ---------------------------------------------------------------------------

template <Field F>
std::optional<SeparableCert<F>> check_separable(const Extension<F>& ext) {
  const F& f = ext.field();
  const auto& t = ext.tensor();
  auto cas = casimir_space(ext, Commutant::a);
  std::vector<Vec<F>> images;
  for (const auto& z : cas) images.push_back(t.multiply(z));
  auto c = span_membership(f, images, ext.algebra().unit());
  if (!c) return std::nullopt;
  Vec<F> e(t.dim(), f.zero());
  for (std::size_t i = 0; i < cas.size(); ++i) vec::axpy(f, e, (*c)[i], cas[i]);
  return SeparableCert<F>{std::move(e)};
}

template <Field F>
std::optional<HirataCert<F>> check_hirata(const Extension<F>& ext) {
  auto w = bimodule_summand_witness(ext.tensor().as_bimodule(), regular_bimodule(ext.a()));
  if (!w) return std::nullopt;
  return HirataCert<F>{std::move(*w)};
}

template <Field F>
std::optional<StronglySeparableCert<F>> check_strongly_separable(const Extension<F>& ext) {
  const F& f = ext.field();
  const Algebra<F>& a = ext.algebra();
  const auto& t = ext.tensor();
  const auto& vb = ext.centralizer_basis();
  auto cas = casimir_space(ext, Commutant::a);
  // mu_u(z) for u over the V basis, z over the Casimir basis.
  std::vector<std::vector<Vec<F>>> evals(cas.size());
  for (std::size_t z = 0; z < cas.size(); ++z)
    for (const auto& u : vb) evals[z].push_back(t.mu_u(cas[z], u));
  // Phi_{v,z}: u -> v mu_u(z), flattened over the V basis.
  std::vector<Vec<F>> maps;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t z = 0; z < cas.size(); ++z)
    for (std::size_t v = 0; v < vb.size(); ++v) {
      Vec<F> flat;
      for (std::size_t l = 0; l < vb.size(); ++l) {
        auto img = a.mul(vb[v], evals[z][l]);
        flat.insert(flat.end(), img.begin(), img.end());
      }
      maps.push_back(std::move(flat));
      index.emplace_back(v, z);
    }
  Vec<F> target;
  for (const auto& u : vb) target.insert(target.end(), u.begin(), u.end());
  if (maps.empty()) return std::nullopt;
  auto c = span_membership(f, maps, target);
  if (!c) return std::nullopt;
  // Fold the scalars into v: v_z = sum_v c_{v,z} v.
  StronglySeparableCert<F> cert;
  for (std::size_t z = 0; z < cas.size(); ++z) {
    Vec<F> vz = a.zero();
    for (std::size_t k = 0; k < index.size(); ++k)
      if (index[k].second == z) vec::axpy(f, vz, (*c)[k], vb[index[k].first]);
    if (vec::is_zero(f, vz)) continue;
    cert.v.push_back(std::move(vz));
    cert.e.push_back(cas[z]);
  }
  return cert;
}

/// Quasibase search via the y = 1 reduction: sum_i t_i beta_i(x) = x (x) 1
/// (left) or sum_i beta_i(x) t_i = 1 (x) x (right); multiplying through by
/// y recovers the two-variable identity.
template <Field F>
std::optional<DepthTwoCert<F>> check_depth_two(const Extension<F>& ext, Side side) {
  const F& f = ext.field();
  const Algebra<F>& a = ext.algebra();
  const auto& t = ext.tensor();
  const std::size_t d = a.dim();
  auto ts = casimir_space(ext, Commutant::b);
  auto betas = bimodule_endomorphisms(ext);
  Vec<F> target;
  for (std::size_t x = 0; x < d; ++x) {
    auto c = side == Side::left ? t.project_pure(a.basis(x), a.unit()) : t.project_pure(a.unit(), a.basis(x));
    target.insert(target.end(), c.begin(), c.end());
  }
  std::vector<Vec<F>> maps;
  std::vector<std::pair<std::size_t, std::size_t>> index;
  for (std::size_t b = 0; b < betas.size(); ++b) {
    std::vector<Matrix<F>> acts;
    for (std::size_t x = 0; x < d; ++x) {
      auto bx = betas[b].column(x);
      acts.push_back(side == Side::left ? t.right_action(bx) : t.left_action(bx));
    }
    for (std::size_t k = 0; k < ts.size(); ++k) {
      Vec<F> flat;
      for (std::size_t x = 0; x < d; ++x) {
        auto img = acts[x].apply(ts[k]);
        flat.insert(flat.end(), img.begin(), img.end());
      }
      maps.push_back(std::move(flat));
      index.emplace_back(k, b);
    }
  }
  if (maps.empty()) return std::nullopt;
  auto c = span_membership(f, maps, target);
  if (!c) return std::nullopt;
  DepthTwoCert<F> cert;
  cert.side = side;
  for (std::size_t b = 0; b < betas.size(); ++b) {
    Vec<F> tb(t.dim(), f.zero());
    for (std::size_t k = 0; k < index.size(); ++k)
      if (index[k].second == b) vec::axpy(f, tb, (*c)[k], ts[index[k].first]);
    if (vec::is_zero(f, tb)) continue;
    cert.t.push_back(std::move(tb));
    cert.beta.push_back(betas[b]);
  }
  return cert;
}

/// Independent formulation of depth two as a summand condition:
/// _B (A (x)_B A)_A | _B A_A (left) or _A (A (x)_B A)_B | _A A_B (right).
template <Field F>
bool depth_two_by_summand(const Extension<F>& ext, Side side) {
  const auto& a = ext.a();
  std::vector<Vec<F>> all;
  for (std::size_t i = 0; i < a->dim(); ++i) all.push_back(a->basis(i));
  auto whole = SubalgebraEmbedding<F>::from_span(a, all);
  auto x = ext.tensor().as_bimodule();
  auto y = regular_bimodule(a);
  if (side == Side::left)
    return bimodule_summand_witness(restrict_bimodule(x, ext.b(), whole), restrict_bimodule(y, ext.b(), whole))
        .has_value();
  return bimodule_summand_witness(restrict_bimodule(x, whole, ext.b()), restrict_bimodule(y, whole, ext.b()))
      .has_value();
}

/// Greedy in V-basis order: keep v when v B enlarges the running span.
template <Field F>
std::optional<LiberalCert<F>> check_liberal(const Extension<F>& ext) {
  const F& f = ext.field();
  const Algebra<F>& a = ext.algebra();
  Echelon<F> span(f, a.dim());
  LiberalCert<F> cert;
  for (const auto& v : ext.centralizer_basis()) {
    bool grew = false;
    for (const auto& b : ext.b().basis()) grew = span.insert(a.mul(v, b)) || grew;
    if (grew) cert.v.push_back(v);
    if (span.rank() == a.dim()) break;
  }
  if (span.rank() != a.dim()) return std::nullopt;
  return cert;
}

template <Field F>
std::optional<WeaklySeparableCert<F>> check_weakly_separable(const Extension<F>& ext) {
  const F& f = ext.field();
  const std::size_t d = ext.dim();
  auto der = derivation_space(ext, DerivationFlags{true, false});
  auto inner = inner_derivation_space(ext);
  if (der.dim() != inner.size()) return std::nullopt;
  std::vector<Vec<F>> ads;
  for (const auto& v : ext.centralizer_basis()) ads.push_back(inner_derivation(ext.algebra(), v).flat());
  WeaklySeparableCert<F> cert;
  for (const auto& dk : der.basis) {
    auto c = span_membership(f, ads, dk.flat());
    if (!c) throw Error("derivation space and inner space disagree despite equal dimension");
    Vec<F> v(d, f.zero());
    for (std::size_t l = 0; l < ads.size(); ++l) vec::axpy(f, v, (*c)[l], ext.centralizer_basis()[l]);
    cert.derivations.push_back(dk);
    cert.inner.push_back(std::move(v));
  }
  return cert;
}

template <Field F>
std::optional<WeaklyQuasiSeparableCert> check_weakly_quasi_separable(const Extension<F>& ext) {
  auto der = derivation_space(ext, DerivationFlags{true, false});
  auto central = derivation_space(ext, DerivationFlags{true, true});
  if (central.dim() != 0) return std::nullopt;
  return WeaklyQuasiSeparableCert{der.dim(), 0};
}

/// Verifies A = B (+) S, S a B-B sub-bimodule, S S = 0.
template <Field F>
std::optional<TrivialCert<F>> check_trivial_with(const Extension<F>& ext, const std::vector<Vec<F>>& s_basis) {
  const F& f = ext.field();
  const Algebra<F>& a = ext.algebra();
  const std::size_t d = a.dim();
  for (const auto& s : s_basis)
    if (s.size() != d) return std::nullopt;
  auto s = span_basis(f, s_basis, d);
  if (s.size() + ext.b().dim() != d) return std::nullopt;
  std::vector<Vec<F>> both = s;
  both.insert(both.end(), ext.b().basis().begin(), ext.b().basis().end());
  if (span_dim(f, both, d) != d) return std::nullopt;
  Echelon<F> span(f, d);
  for (const auto& x : s) span.insert(x);
  for (const auto& x : s) {
    for (const auto& b : ext.b().basis())
      if (!span.contains(a.mul(b, x)) || !span.contains(a.mul(x, b))) return std::nullopt;
    for (const auto& y : s)
      if (!vec::is_zero(f, a.mul(x, y))) return std::nullopt;
  }
  return TrivialCert<F>{std::move(s)};
}

enum class Outcome { holds, fails, unknown };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    default: return "unknown";
  }
}

template <Field F>
struct TrivialSearch {
  Outcome outcome = Outcome::unknown;
  std::optional<TrivialCert<F>> certificate;
  std::size_t points = 0;  // size of the projection space (0 when infinite)
};

/// Enumerates the B-B bimodule projections pi: A -> B fixing B and tests
/// whether ker(pi) squares to zero. Complements S are exactly such kernels.
/// Gives up with Unknown when the affine space has more than `budget` points.
template <Field F>
TrivialSearch<F> search_trivial(const Extension<F>& ext, std::size_t budget) {
  const F& f = ext.field();
  const std::size_t d = ext.dim(), db = ext.b().dim();
  auto homs = bimodule_hom_space(ext.a_over_b(), ext.b_over_b());
  // pi restricted to B must be the identity: sum_h c_h H_h iota = I.
  Matrix<F> iota = Matrix<F>::from_columns(f, ext.b().basis(), d);
  Matrix<F> system(f, db * db, homs.size());
  for (std::size_t h = 0; h < homs.size(); ++h) {
    auto restricted = homs[h] * iota;
    for (std::size_t k = 0; k < db * db; ++k) system(k, h) = restricted.flat()[k];
  }
  auto particular = solve_linear(system, Matrix<F>::identity(f, db).flat());
  TrivialSearch<F> out;
  if (!particular) {
    out.outcome = Outcome::fails;
    out.points = 0;
    return out;
  }
  auto free_dirs = kernel_basis(system);
  const std::uint64_t q = f.characteristic();
  std::uint64_t count = 1;
  bool finite = q != 0 || free_dirs.empty();
  if (finite)
    for (std::size_t i = 0; i < free_dirs.size() && count <= budget; ++i) count *= q;
  if (!finite || count > budget) {
    out.outcome = Outcome::unknown;
    out.points = finite ? static_cast<std::size_t>(count) : 0;
    return out;
  }
  out.points = static_cast<std::size_t>(count);
  std::vector<std::uint64_t> digits(free_dirs.size(), 0);
  for (std::uint64_t n = 0; n < count; ++n) {
    Vec<F> c = *particular;
    for (std::size_t i = 0; i < free_dirs.size(); ++i)
      vec::axpy(f, c, f.from_int(static_cast<std::int64_t>(digits[i])), free_dirs[i]);
    Matrix<F> pi(f, db, d);
    for (std::size_t h = 0; h < homs.size(); ++h)
      if (!f.is_zero(c[h])) pi = pi + homs[h].scaled(c[h]);
    auto s = kernel_basis(pi);
    if (auto cert = check_trivial_with(ext, s)) {
      out.outcome = Outcome::holds;
      out.certificate = std::move(cert);
      return out;
    }
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < q) break;
      digits[i] = 0;
    }
  }
  out.outcome = Outcome::fails;
  return out;
}

inline std::optional<unsigned> prime_power_exponent(std::uint64_t n, std::uint64_t p) {
  if (p < 2 || n == 0) return std::nullopt;
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  if (n != 1) return std::nullopt;
  return k;
}

/// Smallest q = p^j > 1 dividing n such that every basis element has its
/// q-th power in B. For commutative A in characteristic p this proves P_n,
/// since x -> x^q is additive and B is closed under products.
template <Field F>
std::optional<unsigned> frobenius_divisor(const Extension<F>& ext, unsigned n) {
  const Algebra<F>& a = ext.algebra();
  const std::uint64_t p = ext.field().characteristic();
  if (p < 2 || !a.is_commutative()) return std::nullopt;
  for (std::uint64_t q = p; q <= n && n % q == 0; q *= p) {
    bool all = true;
    for (std::size_t i = 0; i < a.dim() && all; ++i)
      all = ext.b().contains(a.power(a.basis(i), static_cast<unsigned>(q)));
    if (all) return static_cast<unsigned>(q);
  }
  return std::nullopt;
}

/// Default seed for the random falsification stage; MOREXT_SEED overrides it
/// at the CLI layer.
inline constexpr std::uint64_t kDefaultPowerSeed = 0x6d6f72657874ULL;

/// Decides, or tries to refute, {x^n | x in A} inside B.
///
/// Exact when B = A, when n = 1, or when A is commutative of prime
/// characteristic p with n = p^k (then x -> x^n is F_p-linear, so checking
/// basis elements suffices); a holding P_{p^j} with p^j | n also settles n. Otherwise searches basis elements, sums of two
/// basis elements and `samples` seeded random elements for a refutation.
template <Field F>
PowerPropertyCert<F> check_power_property(const Extension<F>& ext, unsigned n, std::size_t samples,
                                          std::uint64_t seed = kDefaultPowerSeed) {
  if (n == 0) throw Error("power property needs n >= 1");
  const F& f = ext.field();
  const Algebra<F>& a = ext.algebra();
  const auto& b = ext.b();
  const std::size_t d = a.dim();
  PowerPropertyCert<F> cert;
  cert.n = n;
  auto refutes = [&](const Vec<F>& x) { return !b.contains(a.power(x, n)); };
  auto fail_with = [&](Vec<F> x, std::string method) {
    cert.outcome = PowerOutcome::fails;
    cert.counterexample = std::move(x);
    cert.method = std::move(method);
    return cert;
  };

  if (b.dim() == d) {
    cert.outcome = PowerOutcome::holds;
    cert.method = "subalgebra is the whole algebra";
    return cert;
  }
  if (n == 1) {
    for (std::size_t i = 0; i < d; ++i)
      if (refutes(a.basis(i))) return fail_with(a.basis(i), "n = 1 and B != A");
  }
  const std::uint64_t p = f.characteristic();
  if (p != 0 && a.is_commutative()) {
    if (prime_power_exponent(n, p)) {
      for (std::size_t i = 0; i < d; ++i)
        if (refutes(a.basis(i))) return fail_with(a.basis(i), "Frobenius-linear, basis element");
      cert.outcome = PowerOutcome::holds;
      cert.method = "Frobenius-linear, all basis powers in B";
      return cert;
    }
    if (auto q = frobenius_divisor(ext, n)) {
      cert.outcome = PowerOutcome::holds;
      cert.method = "x^n = (x^" + std::to_string(*q) + ")^" + std::to_string(n / *q) + " with P_" +
                    std::to_string(*q) + " exact";
      return cert;
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    if (refutes(a.basis(i))) return fail_with(a.basis(i), "search: basis element");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      auto x = vec::add(f, a.basis(i), a.basis(j));
      if (refutes(x)) return fail_with(std::move(x), "search: sum of two basis elements");
    }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Vec<F> x(d, f.zero());
    for (auto& c : x) {
      if (p != 0)
        c = f.from_int(static_cast<std::int64_t>(rng() % p));
      else
        c = f.from_int(static_cast<std::int64_t>(rng() % 7) - 3);
    }
    if (refutes(x)) return fail_with(std::move(x), "search: random sample");
  }
  cert.outcome = PowerOutcome::inconclusive;
  cert.method = "no refutation found";
  return cert;
}

// ---------------------------------------------------------------------------
// Verification from scratch
// ---------------------------------------------------------------------------

namespace detail {

template <Field F>
bool commutes_with_all(const Extension<F>& ext, const Vec<F>& t, const std::vector<Vec<F>>& xs) {
  const auto& ten = ext.tensor();
  for (const auto& x : xs)
    if (!vec::equal(ext.field(), ten.act_left(x, t), ten.act_right(t, x))) return false;
  return true;
}

template <Field F>
std::vector<Vec<F>> basis_of(const Algebra<F>& a) {
  std::vector<Vec<F>> out;
  for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(a.basis(i));
  return out;
}

template <Field F>
struct Verifier {
  const Extension<F>& ext;

  bool operator()(const SeparableCert<F>& c) const {
    const auto& t = ext.tensor();
    if (c.e.size() != t.dim()) return false;
    return commutes_with_all(ext, c.e, basis_of(ext.algebra())) &&
           vec::equal(ext.field(), t.multiply(c.e), ext.algebra().unit());
  }

  bool operator()(const HirataCert<F>& c) const {
    auto x = ext.tensor().as_bimodule().enveloping_module();
    auto y = regular_bimodule(ext.a()).enveloping_module();
    return check_summand_witness(c.witness, x, y);
  }

  bool operator()(const StronglySeparableCert<F>& c) const {
    const F& f = ext.field();
    const Algebra<F>& a = ext.algebra();
    if (c.v.size() != c.e.size()) return false;
    for (std::size_t i = 0; i < c.v.size(); ++i) {
      if (c.v[i].size() != a.dim() || c.e[i].size() != ext.tensor().dim()) return false;
      if (!ext.in_centralizer(c.v[i]) || !commutes_with_all(ext, c.e[i], basis_of(a))) return false;
    }
    for (const auto& u : ext.centralizer_basis()) {
      Vec<F> sum = a.zero();
      for (std::size_t i = 0; i < c.v.size(); ++i)
        sum = vec::add(f, sum, a.mul(c.v[i], ext.tensor().mu_u(c.e[i], u)));
      if (!vec::equal(f, sum, u)) return false;
    }
    return true;
  }

  bool operator()(const DepthTwoCert<F>& c) const {
    const F& f = ext.field();
    const Algebra<F>& a = ext.algebra();
    const auto& t = ext.tensor();
    const std::size_t d = a.dim();
    if (c.t.size() != c.beta.size()) return false;
    for (std::size_t i = 0; i < c.t.size(); ++i) {
      if (c.t[i].size() != t.dim()) return false;
      if (!commutes_with_all(ext, c.t[i], ext.b().basis()) || !is_b_bimodule_map(ext, c.beta[i])) return false;
    }
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) {
        Vec<F> sum(t.dim(), f.zero());
        for (std::size_t i = 0; i < c.t.size(); ++i) {
          if (c.side == Side::left) {
            // t_i . beta_i(x) y
            sum = vec::add(f, sum, t.act_right(c.t[i], a.mul(c.beta[i].column(x), a.basis(y))));
          } else {
            // x beta_i(y) . t_i
            sum = vec::add(f, sum, t.act_left(a.mul(a.basis(x), c.beta[i].column(y)), c.t[i]));
          }
        }
        if (!vec::equal(f, sum, t.project_pure(a.basis(x), a.basis(y)))) return false;
      }
    return true;
  }

  bool operator()(const LiberalCert<F>& c) const {
    const Algebra<F>& a = ext.algebra();
    std::vector<Vec<F>> products;
    for (const auto& v : c.v) {
      if (v.size() != a.dim() || !ext.in_centralizer(v)) return false;
      for (const auto& b : ext.b().basis()) products.push_back(a.mul(v, b));
    }
    return span_dim(ext.field(), products, a.dim()) == a.dim();
  }

  bool operator()(const WeaklySeparableCert<F>& c) const {
    const F& f = ext.field();
    const std::size_t d = ext.dim();
    if (c.derivations.size() != c.inner.size()) return false;
    auto reg = regular_bimodule(ext.a());
    std::vector<Vec<F>> flat;
    for (std::size_t k = 0; k < c.derivations.size(); ++k) {
      if (!is_derivation(ext, reg, c.derivations[k], DerivationFlags{true, false})) return false;
      if (c.inner[k].size() != d || !ext.in_centralizer(c.inner[k])) return false;
      if (!(inner_derivation(ext.algebra(), c.inner[k]) == c.derivations[k])) return false;
      flat.push_back(c.derivations[k].flat());
    }
    // The listed derivations must exhaust Der_B(A, A).
    auto der = derivation_space(ext, DerivationFlags{true, false});
    return span_dim(f, flat, d * d) == der.dim();
  }

  bool operator()(const WeaklyQuasiSeparableCert& c) const {
    auto der = derivation_space(ext, DerivationFlags{true, false});
    auto central = derivation_space(ext, DerivationFlags{true, true});
    return c.central_dim == 0 && central.dim() == 0 && c.derivation_dim == der.dim();
  }

  bool operator()(const TrivialCert<F>& c) const { return check_trivial_with(ext, c.complement).has_value(); }

  bool operator()(const PowerPropertyCert<F>& c) const {
    const Algebra<F>& a = ext.algebra();
    const auto& b = ext.b();
    switch (c.outcome) {
      case PowerOutcome::fails:
        return c.counterexample && c.counterexample->size() == a.dim() &&
               !b.contains(a.power(*c.counterexample, c.n));
      case PowerOutcome::holds: {
        if (b.dim() == a.dim()) return true;
        return frobenius_divisor(ext, c.n).has_value();
      }
      default:
        return true;  // claims nothing
    }
  }
};

}  // namespace detail

template <Field F>
bool verify_certificate(const Extension<F>& ext, const Certificate<F>& cert) {
  try {
    return std::visit(detail::Verifier<F>{ext}, cert);
  } catch (const DimensionMismatch&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

class ImplicationViolation : public Error {
 public:
  explicit ImplicationViolation(const std::string& what) : Error("implication violated: " + what) {}
};

inline const std::vector<std::string>& class_names() {
  static const std::vector<std::string> names{
      "hirata",  "strongly_separable",    "separable", "depth_two_left", "depth_two_right",
      "liberal", "weakly_separable", "weakly_quasi_separable", "trivial", "power"};
  return names;
}

template <Field F>
struct ClassResult {
  std::string name;
  Outcome outcome = Outcome::unknown;
  std::optional<Certificate<F>> certificate;
  bool verified = false;
  std::string note;
};

struct ExtensionDims {
  std::size_t a = 0, b = 0, centralizer = 0, center = 0, tensor = 0;
  std::size_t casimir_a = 0, casimir_b = 0;
  std::size_t derivations = 0, inner = 0, central_derivations = 0, endomorphisms = 0;
};

struct ImplicationFlags {
  bool hirata_strongly_separable = true;
  bool strongly_separable_separable = true;
  bool separable_weakly_separable = true;
  bool separable_weakly_quasi_separable = true;
  bool all() const {
    return hirata_strongly_separable && strongly_separable_separable && separable_weakly_separable &&
           separable_weakly_quasi_separable;
  }
};

struct ClassifyOptions {
  std::vector<std::string> classes;  // empty: all
  std::size_t trivial_budget = 1u << 16;
  unsigned power_max_n = 8;
  std::size_t power_samples = 64;
  std::uint64_t seed = kDefaultPowerSeed;

  bool wants(const std::string& c) const {
    if (classes.empty()) return true;
    for (const auto& x : classes)
      if (x == c) return true;
    return false;
  }
};

template <Field F>
struct ClassReport {
  std::string name;
  FieldSpec field;
  ExtensionDims dims;
  std::vector<ClassResult<F>> results;   // one per requested non-power class, fixed order
  std::vector<PowerPropertyCert<F>> power;  // n = 1..power_max_n
  std::vector<bool> power_verified;
  ImplicationFlags implications;
  std::vector<std::pair<std::string, double>> timing;  // seconds per check

  const ClassResult<F>* find(const std::string& c) const {
    for (const auto& r : results)
      if (r.name == c) return &r;
    return nullptr;
  }
  Outcome outcome(const std::string& c) const {
    auto r = find(c);
    return r ? r->outcome : Outcome::unknown;
  }
};

template <Field F>
ExtensionDims extension_dims(const Extension<F>& ext) {
  ExtensionDims d;
  d.a = ext.dim();
  d.b = ext.b().dim();
  d.centralizer = ext.centralizer_basis().size();
  d.center = ext.center_basis().size();
  d.tensor = ext.tensor().dim();
  d.casimir_a = casimir_space(ext, Commutant::a).size();
  d.casimir_b = casimir_space(ext, Commutant::b).size();
  d.derivations = derivation_space(ext, DerivationFlags{true, false}).dim();
  d.inner = inner_derivation_space(ext).size();
  d.central_derivations = derivation_space(ext, DerivationFlags{true, true}).dim();
  d.endomorphisms = bimodule_endomorphisms(ext).size();
  return d;
}

template <Field F>
ClassReport<F> classify(const Extension<F>& ext, const ClassifyOptions& opt = {}) {
  using Clock = std::chrono::steady_clock;
  ClassReport<F> rep;
  rep.name = ext.name();
  rep.field = ext.field().spec();
  rep.dims = extension_dims(ext);

  auto timed = [&](const std::string& name, auto&& run) {
    auto start = Clock::now();
    run();
    rep.timing.emplace_back(name, std::chrono::duration<double>(Clock::now() - start).count());
  };
  auto record = [&](const std::string& name, auto maybe) {
    ClassResult<F> r;
    r.name = name;
    if (maybe) {
      r.outcome = Outcome::holds;
      r.certificate = Certificate<F>(std::move(*maybe));
      r.verified = verify_certificate(ext, *r.certificate);
      if (!r.verified) throw Error("certificate for " + name + " failed verification");
    } else {
      r.outcome = Outcome::fails;
    }
    rep.results.push_back(std::move(r));
  };

  if (opt.wants("hirata")) timed("hirata", [&] { record("hirata", check_hirata(ext)); });
  if (opt.wants("strongly_separable"))
    timed("strongly_separable", [&] { record("strongly_separable", check_strongly_separable(ext)); });
  if (opt.wants("separable")) timed("separable", [&] { record("separable", check_separable(ext)); });
  if (opt.wants("depth_two_left"))
    timed("depth_two_left", [&] { record("depth_two_left", check_depth_two(ext, Side::left)); });
  if (opt.wants("depth_two_right"))
    timed("depth_two_right", [&] { record("depth_two_right", check_depth_two(ext, Side::right)); });
  if (opt.wants("liberal")) timed("liberal", [&] { record("liberal", check_liberal(ext)); });
  if (opt.wants("weakly_separable"))
    timed("weakly_separable", [&] { record("weakly_separable", check_weakly_separable(ext)); });
  if (opt.wants("weakly_quasi_separable"))
    timed("weakly_quasi_separable",
          [&] { record("weakly_quasi_separable", check_weakly_quasi_separable(ext)); });
  if (opt.wants("trivial"))
    timed("trivial", [&] {
      auto s = search_trivial(ext, opt.trivial_budget);
      ClassResult<F> r;
      r.name = "trivial";
      r.outcome = s.outcome;
      if (s.certificate) {
        r.certificate = Certificate<F>(std::move(*s.certificate));
        r.verified = verify_certificate(ext, *r.certificate);
        if (!r.verified) throw Error("certificate for trivial failed verification");
      }
      if (s.outcome == Outcome::unknown)
        r.note = s.points ? "projection space has " + std::to_string(s.points) + " points, over budget"
                          : "projection space is infinite";
      else
        r.note = "searched " + std::to_string(s.points) + (s.points == 1 ? " projection" : " projections");
      rep.results.push_back(std::move(r));
    });
  if (opt.wants("power"))
    timed("power", [&] {
      for (unsigned n = 1; n <= opt.power_max_n; ++n) {
        auto c = check_power_property(ext, n, opt.power_samples, opt.seed);
        bool ok = verify_certificate(ext, Certificate<F>(c));
        if (!ok) throw Error("power certificate failed verification");
        rep.power.push_back(std::move(c));
        rep.power_verified.push_back(ok);
      }
    });

  auto implies = [&](const char* p, const char* q) {
    auto rp = rep.find(p), rq = rep.find(q);
    if (!rp || !rq) return true;
    return !(rp->outcome == Outcome::holds && rq->outcome == Outcome::fails);
  };
  rep.implications.hirata_strongly_separable = implies("hirata", "strongly_separable");
  rep.implications.strongly_separable_separable = implies("strongly_separable", "separable");
  rep.implications.separable_weakly_separable = implies("separable", "weakly_separable");
  rep.implications.separable_weakly_quasi_separable = implies("separable", "weakly_quasi_separable");
  if (!rep.implications.all())
    throw ImplicationViolation(ext.name().empty() ? std::string("unnamed extension") : ext.name());
  return rep;
}

}  // namespace morext
