#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "morext/module.hpp"

namespace morext {

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

/// e in (A (x)_B A)^A with mu(e) = 1, in tensor-square coordinates.
template <Field F>
struct SeparableCert {
  Vec<F> e;
};

/// f_i : A (x)_B A -> A and g_i : A -> A (x)_B A, A-A linear, sum g_i f_i = id.
template <Field F>
struct HirataCert {
  SummandWitness<F> witness;
};

/// Pairs (v_i, e_i), v_i in V_A(B), e_i in (A (x)_B A)^A, with
/// u = sum_i v_i mu_u(e_i) for all u in V_A(B).
template <Field F>
struct StronglySeparableCert {
  std::vector<Vec<F>> v;
  std::vector<Vec<F>> e;
};

/// Quasibases t_i in (A (x)_B A)^B and beta_i in End(_B A_B).
template <Field F>
struct DepthTwoCert {
  Side side = Side::left;
  std::vector<Vec<F>> t;
  std::vector<Matrix<F>> beta;
};

/// v_i in V_A(B) with A = sum_i v_i B.
template <Field F>
struct LiberalCert {
  std::vector<Vec<F>> v;
};

/// A basis D_k of Der_B(A, A) together with v_k in V_A(B), D_k = ad_{v_k}.
template <Field F>
struct WeaklySeparableCert {
  std::vector<Matrix<F>> derivations;
  std::vector<Vec<F>> inner;
};

/// Recorded dimensions; the certificate asserts the central space is zero.
struct WeaklyQuasiSeparableCert {
  std::size_t derivation_dim = 0;
  std::size_t central_dim = 0;
};

/// Basis of a square-zero B-B complement S with A = B (+) S.
template <Field F>
struct TrivialCert {
  std::vector<Vec<F>> complement;
};

enum class PowerOutcome { holds, fails, inconclusive };

inline const char* power_outcome_name(PowerOutcome o) {
  switch (o) {
    case PowerOutcome::holds: return "holds";
    case PowerOutcome::fails: return "fails";
    default: return "inconclusive";
  }
}

/// Outcome of testing {x^n | x in A} inside B.
template <Field F>
struct PowerPropertyCert {
  unsigned n = 1;
  PowerOutcome outcome = PowerOutcome::inconclusive;
  std::optional<Vec<F>> counterexample;
  std::string method;
};

template <Field F>
using Certificate = std::variant<SeparableCert<F>, HirataCert<F>, StronglySeparableCert<F>,
                                 DepthTwoCert<F>, LiberalCert<F>, WeaklySeparableCert<F>,
                                 WeaklyQuasiSeparableCert, TrivialCert<F>, PowerPropertyCert<F>>;

template <Field F>
std::string certificate_kind(const Certificate<F>& c) {
  struct {
    std::string operator()(const SeparableCert<F>&) const { return "separable"; }
    std::string operator()(const HirataCert<F>&) const { return "hirata"; }
    std::string operator()(const StronglySeparableCert<F>&) const { return "strongly_separable"; }
    std::string operator()(const DepthTwoCert<F>& d) const {
      return std::string("depth_two_") + side_name(d.side);
    }
    std::string operator()(const LiberalCert<F>&) const { return "liberal"; }
    std::string operator()(const WeaklySeparableCert<F>&) const { return "weakly_separable"; }
    std::string operator()(const WeaklyQuasiSeparableCert&) const { return "weakly_quasi_separable"; }
    std::string operator()(const TrivialCert<F>&) const { return "trivial"; }
    std::string operator()(const PowerPropertyCert<F>&) const { return "power"; }
  } visitor;
  return std::visit(visitor, c);
}

}  // namespace morext
