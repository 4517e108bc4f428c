#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "morext/invariance.hpp"
#include "morext/serialize.hpp"

namespace morext {

// ---------------------------------------------------------------------------
// Classification reports
// ---------------------------------------------------------------------------

inline Json dims_json(const ExtensionDims& d) {
  return Json{{"A", d.a},
              {"B", d.b},
              {"centralizer", d.centralizer},
              {"center", d.center},
              {"tensor_square", d.tensor},
              {"casimir_A", d.casimir_a},
              {"casimir_B", d.casimir_b},
              {"derivations", d.derivations},
              {"inner_derivations", d.inner},
              {"central_derivations", d.central_derivations},
              {"bimodule_endomorphisms", d.endomorphisms}};
}

inline Json implications_json(const ImplicationFlags& i) {
  return Json{{"hirata => strongly_separable", i.hirata_strongly_separable},
              {"strongly_separable => separable", i.strongly_separable_separable},
              {"separable => weakly_separable", i.separable_weakly_separable},
              {"separable => weakly_quasi_separable", i.separable_weakly_quasi_separable}};
}

template <Field F>
Json power_json(const F& f, const PowerPropertyCert<F>& c) {
  return certificate_json(f, Certificate<F>(c));
}

template <Field F>
Json class_report_json(const F& f, const ClassReport<F>& rep) {
  Json out;
  out["extension"] = rep.name;
  out["field"] = rep.field.name();
  out["dimensions"] = dims_json(rep.dims);
  Json classes = Json::object();
  for (const auto& r : rep.results) {
    Json c{{"outcome", outcome_name(r.outcome)}};
    if (r.certificate) {
      c["verified"] = r.verified;
      c["certificate"] = certificate_json(f, *r.certificate);
    }
    if (!r.note.empty()) c["note"] = r.note;
    classes[r.name] = std::move(c);
  }
  if (!rep.power.empty()) {
    Json p = Json::array();
    for (const auto& c : rep.power) p.push_back(power_json(f, c));
    classes["power"] = std::move(p);
  }
  out["classes"] = std::move(classes);
  out["implications"] = implications_json(rep.implications);
  return out;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) {
  return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}

}  // namespace detail

template <Field F>
std::string class_report_text(const F& f, const ClassReport<F>& rep) {
  std::ostringstream os;
  const auto& d = rep.dims;
  os << "extension " << (rep.name.empty() ? "(unnamed)" : rep.name) << " over " << rep.field.name() << "\n";
  os << "  dim A = " << d.a << ", dim B = " << d.b << ", dim V = " << d.centralizer << ", dim C = " << d.center
     << "\n";
  os << "  dim A(x)_B A = " << d.tensor << ", Casimir_A = " << d.casimir_a << ", Casimir_B = " << d.casimir_b
     << "\n";
  os << "  dim Der_B = " << d.derivations << " (inner " << d.inner << ", central " << d.central_derivations
     << "), dim End(_B A_B) = " << d.endomorphisms << "\n";
  for (const auto& r : rep.results) {
    os << "  " << detail::pad(r.name, 24) << outcome_name(r.outcome);
    if (r.certificate) os << (r.verified ? "  [certificate verified]" : "  [certificate FAILED]");
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << "\n";
  }
  for (const auto& c : rep.power) {
    os << "  " << detail::pad("power(" + std::to_string(c.n) + ")", 24) << power_outcome_name(c.outcome) << "  ("
       << c.method;
    if (c.counterexample) os << "; witness " << vec_json(f, *c.counterexample).dump();
    os << ")\n";
  }
  os << "  implications " << (rep.implications.all() ? "consistent" : "VIOLATED") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Transport reports
// ---------------------------------------------------------------------------

template <Field F>
struct TransportedClass {
  std::string name;
  Outcome source = Outcome::unknown;
  std::string mode;  // transported | recomputed | not_applicable
  Outcome target = Outcome::unknown;
  bool verified = false;
  std::optional<Certificate<F>> certificate;
};

template <Field F>
struct PowerTransfer {
  unsigned n = 0;
  PowerOutcome source = PowerOutcome::inconclusive;
  PowerOutcome target = PowerOutcome::inconclusive;
  std::optional<Vec<F>> witness;
  bool transferred() const { return !(source == PowerOutcome::holds && target == PowerOutcome::fails); }
};

template <Field F>
struct TransportReport {
  std::string name;
  FieldSpec field;
  std::string progenerator;
  std::size_t module_dim = 0, dual_dim = 0;
  ExtensionDims source_dims, target_dims;
  std::vector<InvarianceCheck> checks;
  bool psi_well_defined = false;
  std::vector<TransportedClass<F>> classes;
  std::vector<PowerTransfer<F>> power;

  /// False iff some transported certificate failed verification.
  bool invariance_ok() const {
    for (const auto& c : classes)
      if (c.mode == "transported" && !c.verified) return false;
    return true;
  }
  bool checks_ok() const {
    for (const auto& l : checks)
      if (!l.ok) return false;
    return true;
  }
};

/// Hirata and weakly quasi-separable have no transport formula; they are
/// recomputed on A'/B' when the source holds.
template <Field F>
TransportReport<F> transport_report(const ExtensionPtr<F>& ext, Progenerator<F> n, const std::string& description,
                                    const ClassifyOptions& opt = {}) {
  TransportReport<F> rep;
  rep.name = ext->name();
  rep.field = ext->field().spec();
  rep.progenerator = description;
  rep.module_dim = n.dim();
  rep.dual_dim = n.dual_dim();
  TransportedExtension<F> te(ext, std::move(n));
  const auto& dst = te.prime();
  rep.source_dims = extension_dims(*ext);
  rep.target_dims = extension_dims(dst);
  rep.checks = invariance_checks(te);
  rep.psi_well_defined = te.psi_well_defined();

  auto source = classify(*ext, opt);
  for (const auto& r : source.results) {
    TransportedClass<F> t;
    t.name = r.name;
    t.source = r.outcome;
    if (r.outcome != Outcome::holds || !r.certificate) {
      t.mode = "not_applicable";
      rep.classes.push_back(std::move(t));
      continue;
    }
    try {
      t.certificate = transport_certificate(te, *r.certificate);
      t.mode = "transported";
      t.verified = verify_certificate(dst, *t.certificate);
      t.target = t.verified ? Outcome::holds : Outcome::unknown;
    } catch (const UnsupportedClass&) {
      t.mode = "recomputed";
      std::optional<Certificate<F>> c;
      if (r.name == "hirata") {
        if (auto h = check_hirata(dst)) c = Certificate<F>(std::move(*h));
      } else if (r.name == "weakly_quasi_separable") {
        if (auto w = check_weakly_quasi_separable(dst)) c = Certificate<F>(*w);
      }
      t.target = c ? Outcome::holds : Outcome::fails;
      t.verified = c && verify_certificate(dst, *c);
      t.certificate = std::move(c);
    }
    rep.classes.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < source.power.size(); ++i) {
    PowerTransfer<F> p;
    p.n = source.power[i].n;
    p.source = source.power[i].outcome;
    auto target = check_power_property(dst, p.n, opt.power_samples, opt.seed);
    p.target = target.outcome;
    p.witness = target.counterexample;
    rep.power.push_back(std::move(p));
  }
  return rep;
}

template <Field F>
Json transport_report_json(const F& f, const TransportReport<F>& rep) {
  Json out;
  out["extension"] = rep.name;
  out["field"] = rep.field.name();
  out["progenerator"] = Json{{"kind", rep.progenerator}, {"dim", rep.module_dim}, {"dual_dim", rep.dual_dim}};
  out["source_dimensions"] = dims_json(rep.source_dims);
  out["target_dimensions"] = dims_json(rep.target_dims);
  Json checks = Json::object();
  for (const auto& l : rep.checks) {
    Json j{{"ok", l.ok}};
    if (!l.detail.empty()) j["dims"] = l.detail;
    checks[l.name] = std::move(j);
  }
  out["invariance_checks"] = std::move(checks);
  out["psi_well_defined"] = rep.psi_well_defined;
  Json classes = Json::object();
  for (const auto& c : rep.classes) {
    Json j{{"source", outcome_name(c.source)}, {"mode", c.mode}};
    if (c.mode != "not_applicable") {
      j["target"] = outcome_name(c.target);
      j["verified"] = c.verified;
      if (c.certificate) j["certificate"] = certificate_json(f, *c.certificate);
    }
    classes[c.name] = std::move(j);
  }
  out["classes"] = std::move(classes);
  Json power = Json::array();
  for (const auto& p : rep.power) {
    Json j{{"n", p.n},
           {"source", power_outcome_name(p.source)},
           {"target", power_outcome_name(p.target)},
           {"transferred", p.transferred()}};
    if (p.witness) j["target_witness"] = vec_json(f, *p.witness);
    power.push_back(std::move(j));
  }
  out["power"] = std::move(power);
  out["invariance_ok"] = rep.invariance_ok();
  return out;
}

template <Field F>
std::string transport_report_text(const F& f, const TransportReport<F>& rep) {
  std::ostringstream os;
  os << "transport of " << (rep.name.empty() ? "(unnamed)" : rep.name) << " over " << rep.field.name() << " along "
     << rep.progenerator << " (dim N = " << rep.module_dim << ", dim N* = " << rep.dual_dim << ")\n";
  os << "  dim A' = " << rep.target_dims.a << ", dim B' = " << rep.target_dims.b << "\n";
  for (const auto& l : rep.checks) {
    os << "  check " << detail::pad(l.name, 20) << (l.ok ? "ok" : "FAILED");
    if (!l.detail.empty()) os << "  (" << l.detail << ")";
    os << "\n";
  }
  os << "  psi on all of A(x)_B A " << (rep.psi_well_defined ? "well defined" : "not well defined") << "\n";
  for (const auto& c : rep.classes) {
    os << "  " << detail::pad(c.name, 24) << outcome_name(c.source);
    if (c.mode == "transported")
      os << " -> transported certificate " << (c.verified ? "verifies" : "FAILS");
    else if (c.mode == "recomputed")
      os << " -> recomputed on A'/B': " << outcome_name(c.target);
    os << "\n";
  }
  for (const auto& p : rep.power) {
    os << "  " << detail::pad("power(" + std::to_string(p.n) + ")", 24) << power_outcome_name(p.source) << " -> "
       << power_outcome_name(p.target);
    if (!p.transferred()) os << "  NOT transferred";
    if (p.witness) os << "  witness " << vec_json(f, *p.witness).dump();
    os << "\n";
  }
  os << "  invariance " << (rep.invariance_ok() ? "ok" : "VIOLATED") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// The truncated-polynomial counterexample
// ---------------------------------------------------------------------------

/// F_p[t]/(t^{2p}) over span{1, t^p} satisfies x^p in B for every x, while
/// its free rank-2 transport M_2(A)/M_2(B) contains w = [[1, t], [0, 0]]
/// with w^n = w outside B' for every n.
struct CounterexampleDemo {
  std::uint32_t p = 0;
  PowerOutcome base = PowerOutcome::inconclusive;
  std::string base_method;
  PowerOutcome transported = PowerOutcome::inconclusive;
  std::vector<std::string> witness;  // A' coordinates of w
  std::vector<bool> idempotent_outside;  // w^n = w and w not in B', n = 1..max_n
  bool alignment_ok = false;

  bool reproduced() const {
    if (base != PowerOutcome::holds || transported != PowerOutcome::fails || !alignment_ok) return false;
    for (bool b : idempotent_outside)
      if (!b) return false;
    return true;
  }
};

inline CounterexampleDemo counterexample_demo(std::uint32_t p, unsigned max_n = 8) {
  PrimeField f(p);
  auto a = truncated_poly_algebra(f, 2 * p);
  auto ext = Extension<PrimeField>::create(a, {a->basis(0), a->basis(p)}, "trunc-p" + std::to_string(p));
  CounterexampleDemo demo;
  demo.p = p;
  auto base = check_power_property(*ext, p, 0);
  demo.base = base.outcome;
  demo.base_method = base.method;

  TransportedExtension<PrimeField> te(ext, progenerator_free(ext->b().induced(), 2));
  const auto& dst = te.prime();
  demo.transported = check_power_property(dst, p, 0).outcome;
  auto align = matrix_alignment(te);
  auto m2 = matrix_algebra(*a, 2);
  demo.alignment_ok = is_algebra_homomorphism(*m2, dst.algebra(), align) && rank(align) == dst.dim();
  const std::size_t d = a->dim();
  Vec<PrimeField> w(4 * d, f.zero());
  w[0] = f.one();      // E_11 (x) 1
  w[d + 1] = f.one();  // E_12 (x) t
  auto wp = align.apply(w);
  for (const auto& x : wp) demo.witness.push_back(f.format(x));
  for (unsigned n = 1; n <= max_n; ++n) {
    auto wn = dst.algebra().power(wp, n);
    demo.idempotent_outside.push_back(vec::equal(f, wn, wp) && !dst.b().contains(wn));
  }
  return demo;
}

}  // namespace morext
