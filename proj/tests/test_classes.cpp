#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace morext;
using testing::ints;

namespace {

using PExt = ExtensionPtr<PrimeField>;

PExt m2_over_diagonal() {
  PrimeField f(2);
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  return Extension<PrimeField>::create(m2, {m2->basis(0), m2->basis(3)});
}

PExt truncation(std::uint32_t p) {
  PrimeField f(p);
  auto a = truncated_poly_algebra(f, 2 * p);
  return Extension<PrimeField>::create(a, {a->basis(0), a->basis(p)});
}

PExt over_itself(const AlgebraPtr<PrimeField>& a) {
  std::vector<Vec<PrimeField>> all;
  for (std::size_t i = 0; i < a->dim(); ++i) all.push_back(a->basis(i));
  return Extension<PrimeField>::create(a, all);
}

std::vector<PExt> prime_catalog() {
  std::vector<PExt> out;
  for (const auto& e : catalog())
    if (auto p = std::get_if<PExt>(&e.extension)) out.push_back(*p);
  return out;
}

bool is_casimir(const Extension<PrimeField>& ext, const Vec<PrimeField>& t) {
  const auto& tensor = ext.tensor();
  for (std::size_t i = 0; i < ext.dim(); ++i) {
    auto x = ext.algebra().basis(i);
    if (!vec::equal(ext.field(), tensor.act_left(x, t), tensor.act_right(t, x))) return false;
  }
  return true;
}

/// id_X in span{g f} over bimodule maps f: X -> Y, g: Y -> X.
bool trace_ideal_contains_identity(const Bimodule<PrimeField>& x, const Bimodule<PrimeField>& y) {
  const PrimeField& f = x.field();
  auto to = bimodule_hom_space(x, y);
  auto back = bimodule_hom_space(y, x);
  std::vector<Vec<PrimeField>> products;
  for (const auto& a : to)
    for (const auto& b : back) products.push_back((b * a).flat());
  return span_membership(f, products, Matrix<PrimeField>::identity(f, x.dim()).flat()).has_value();
}

void check_all_certificates(const Extension<PrimeField>& ext, const ClassReport<PrimeField>& rep) {
  for (const auto& r : rep.results) {
    if (r.outcome != Outcome::holds) continue;
    REQUIRE(r.certificate);
    CHECK(r.verified);
    CHECK(verify_certificate(ext, *r.certificate));
  }
  for (const auto& p : rep.power) CHECK(verify_certificate(ext, Certificate<PrimeField>(p)));
}

}  // namespace

TEST_CASE("golden table: M_2(F_2) over its diagonal", "[classes][golden]") {
  auto ext = m2_over_diagonal();
  auto rep = classify(*ext);
  for (const auto* c : {"hirata", "strongly_separable", "separable", "depth_two_left", "depth_two_right",
                        "weakly_separable", "weakly_quasi_separable"})
    CHECK(rep.outcome(c) == Outcome::holds);
  CHECK(rep.outcome("liberal") == Outcome::fails);
  CHECK(rep.outcome("trivial") == Outcome::fails);
  REQUIRE(rep.power.size() == 8);
  for (const auto& p : rep.power) CHECK(p.outcome == PowerOutcome::fails);
  CHECK(rep.implications.all());
  check_all_certificates(*ext, rep);
  CHECK(rep.dims.centralizer == 2);
  CHECK(rep.dims.center == 1);
  CHECK(rep.dims.tensor == 8);
}

TEST_CASE("golden table: F_2[t]/(t^4) over span{1, t^2}", "[classes][golden]") {
  auto ext = truncation(2);
  auto rep = classify(*ext);
  CHECK(rep.outcome("liberal") == Outcome::holds);
  CHECK(rep.outcome("depth_two_left") == Outcome::holds);
  CHECK(rep.outcome("depth_two_right") == Outcome::holds);
  for (const auto* c : {"hirata", "strongly_separable", "separable", "weakly_separable", "weakly_quasi_separable"})
    CHECK(rep.outcome(c) == Outcome::fails);
  CHECK(rep.power[1].outcome == PowerOutcome::holds);
  CHECK(rep.dims.derivations == 4);
  CHECK(rep.dims.inner == 0);
  CHECK(rep.dims.central_derivations == 4);
  check_all_certificates(*ext, rep);
}

TEST_CASE("B = A: every class holds", "[classes]") {
  PrimeField f(2);
  for (const auto& a : {matrix_algebra(*ground_field_algebra(f), 2), truncated_poly_algebra(f, 3)}) {
    auto ext = over_itself(a);
    auto rep = classify(*ext);
    for (const auto& r : rep.results) CHECK(r.outcome == Outcome::holds);
    for (const auto& p : rep.power) CHECK(p.outcome == PowerOutcome::holds);
    check_all_certificates(*ext, rep);
    auto sep = check_separable(*ext);
    REQUIRE(sep);
    CHECK(vec::equal(f, sep->e, ext->tensor().project_pure(a->unit(), a->unit())));
    auto lib = check_liberal(*ext);
    REQUIRE(lib);
    CHECK(lib->v.size() == 1);
  }
}

TEST_CASE("separability idempotent of M_2(F_2) over its diagonal", "[classes]") {
  auto ext = m2_over_diagonal();
  const auto& a = ext->algebra();
  const auto& t = ext->tensor();
  // E_11 (x) E_11 + E_21 (x) E_12.
  auto e = vec::add(ext->field(), t.project_pure(a.basis(0), a.basis(0)), t.project_pure(a.basis(2), a.basis(1)));
  CHECK(is_casimir(*ext, e));
  CHECK(vec::equal(ext->field(), t.multiply(e), a.unit()));
  CHECK(verify_certificate(*ext, Certificate<PrimeField>(SeparableCert<PrimeField>{e})));
  auto found = check_separable(*ext);
  REQUIRE(found);
  CHECK(verify_certificate(*ext, Certificate<PrimeField>(*found)));
}

TEST_CASE("no separability idempotent for the truncation: all 2^8 candidates", "[classes][oracle]") {
  auto ext = truncation(2);
  REQUIRE(ext->tensor().dim() == 8);
  std::size_t casimirs = 0, idempotents = 0;
  testing::for_each_vector(ext->field(), 8, [&](const Vec<PrimeField>& t) {
    if (!is_casimir(*ext, t)) return;
    ++casimirs;
    idempotents += vec::equal(ext->field(), ext->tensor().multiply(t), ext->algebra().unit());
  });
  CHECK(idempotents == 0);
  CHECK(casimirs == (std::size_t{1} << casimir_space(*ext, Commutant::a).size()));
  CHECK_FALSE(check_separable(*ext));
}

TEST_CASE("Hirata agrees with a direct trace-ideal computation", "[classes][oracle]") {
  for (const auto& ext : prime_catalog()) {
    bool direct = trace_ideal_contains_identity(ext->tensor().as_bimodule(), regular_bimodule(ext->a()));
    INFO(ext->name());
    CHECK(check_hirata(*ext).has_value() == direct);
  }
  CHECK_FALSE(trace_ideal_contains_identity(truncation(2)->tensor().as_bimodule(), regular_bimodule(truncation(2)->a())));
}

TEST_CASE("strongly separable implies separable on the catalog", "[classes]") {
  for (const auto& ext : prime_catalog()) {
    INFO(ext->name());
    if (!check_separable(*ext)) CHECK_FALSE(check_strongly_separable(*ext));
  }
  auto ss = check_strongly_separable(*m2_over_diagonal());
  REQUIRE(ss);
  CHECK(verify_certificate(*m2_over_diagonal(), Certificate<PrimeField>(*ss)));
}

TEST_CASE("depth two agrees with the summand formulation", "[classes][oracle]") {
  for (const auto& ext : prime_catalog()) {
    for (Side side : {Side::left, Side::right}) {
      INFO(ext->name() << " " << side_name(side));
      auto cert = check_depth_two(*ext, side);
      CHECK(cert.has_value() == depth_two_by_summand(*ext, side));
      // The verifier checks the two-variable identity on all basis pairs.
      if (cert) CHECK(verify_certificate(*ext, Certificate<PrimeField>(*cert)));
    }
  }
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    auto ext = testing::random_extension(rng);
    for (Side side : {Side::left, Side::right})
      CHECK(check_depth_two(*ext, side).has_value() == depth_two_by_summand(*ext, side));
  }
}

TEST_CASE("liberal", "[classes]") {
  auto trunc = truncation(2);
  auto lib = check_liberal(*trunc);
  REQUIRE(lib);
  const PrimeField& f = trunc->field();
  REQUIRE(lib->v.size() == 2);
  CHECK(vec::equal(f, lib->v[0], trunc->algebra().basis(0)));
  CHECK(vec::equal(f, lib->v[1], trunc->algebra().basis(1)));
  CHECK_FALSE(check_liberal(*m2_over_diagonal()));
  // Dropping t leaves a family that no longer spans.
  CHECK_FALSE(verify_certificate(*trunc, Certificate<PrimeField>(LiberalCert<PrimeField>{{lib->v[0]}})));
}

TEST_CASE("weak separability", "[classes]") {
  auto trunc = truncation(2);
  CHECK_FALSE(check_weakly_separable(*trunc));
  CHECK_FALSE(check_weakly_quasi_separable(*trunc));
  auto diag = m2_over_diagonal();
  auto ws = check_weakly_separable(*diag);
  REQUIRE(ws);
  CHECK(ws->derivations.size() == 1);
  CHECK(verify_certificate(*diag, Certificate<PrimeField>(*ws)));
  auto wqs = check_weakly_quasi_separable(*diag);
  REQUIRE(wqs);
  CHECK(wqs->central_dim == 0);
  CHECK_FALSE(verify_certificate(*trunc, Certificate<PrimeField>(WeaklyQuasiSeparableCert{4, 0})));
}

TEST_CASE("trivial extensions", "[classes]") {
  PrimeField f(2);
  auto b = truncated_poly_algebra(f, 2);
  auto ext = trivial_extension_algebra(b, regular_bimodule(b));
  const auto& a = ext->algebra();
  auto own = check_trivial_with(*ext, {a.basis(2), a.basis(3)});
  REQUIRE(own);
  CHECK(verify_certificate(*ext, Certificate<PrimeField>(*own)));
  auto search = search_trivial(*ext, 1u << 16);
  CHECK(search.outcome == Outcome::holds);

  // S not closed under the B-action.
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  auto diag = m2_over_diagonal();
  CHECK_FALSE(check_trivial_with(*diag, {vec::add(f, m2->basis(1), m2->basis(2)), m2->basis(1)}));
  CHECK_FALSE(check_trivial_with(*diag, {vec::add(f, m2->basis(1), m2->basis(0)), m2->basis(2)}));
  auto none = search_trivial(*diag, 1u << 16);
  CHECK(none.outcome == Outcome::fails);
  CHECK(none.points > 0);
  CHECK(search_trivial(*diag, 0).outcome == Outcome::unknown);

  // Over Q the projection space is infinite unless it is a single point.
  auto q = std::get<ExtensionPtr<RationalField>>(catalog_entry("m2diag-q").extension);
  auto qsearch = search_trivial(*q, 1u << 16);
  CHECK(qsearch.outcome != Outcome::holds);
}

TEST_CASE("power property", "[classes][power]") {
  auto trunc = truncation(2);
  auto p2 = check_power_property(*trunc, 2, 64);
  CHECK(p2.outcome == PowerOutcome::holds);
  CHECK(testing::power_property_exhaustive(*trunc, 2));
  auto p3 = check_power_property(*trunc, 3, 64);
  REQUIRE(p3.outcome == PowerOutcome::fails);
  REQUIRE(p3.counterexample);
  CHECK_FALSE(trunc->b().contains(trunc->algebra().power(*p3.counterexample, 3)));
  CHECK(verify_certificate(*trunc, Certificate<PrimeField>(p3)));
  // A fake counterexample is rejected.
  auto fake = p3;
  fake.counterexample = trunc->algebra().unit();
  CHECK_FALSE(verify_certificate(*trunc, Certificate<PrimeField>(fake)));

  // M_2 of the truncation: [[1, t], [0, 0]] is idempotent and outside M_2(B).
  PrimeField f(2);
  auto m2a = matrix_algebra(*trunc->a(), 2);
  auto m2b = matrix_algebra(*trunc->b().induced(), 2);
  std::vector<Vec<PrimeField>> span;
  for (std::size_t blk = 0; blk < 4; ++blk)
    for (const auto& v : trunc->b().basis()) {
      Vec<PrimeField> w(16, f.zero());
      for (std::size_t i = 0; i < 4; ++i) w[blk * 4 + i] = v[i];
      span.push_back(w);
    }
  auto m2ext = Extension<PrimeField>::create(m2a, span);
  for (unsigned n = 1; n <= 8; ++n) CHECK(check_power_property(*m2ext, n, 64).outcome == PowerOutcome::fails);
}

TEST_CASE("exact power branch agrees with exhaustive enumeration", "[classes][power][oracle]") {
  std::vector<PExt> exts = prime_catalog();
  std::mt19937_64 rng(77);
  for (int i = 0; i < 40; ++i) exts.push_back(testing::random_extension(rng));
  std::size_t exact = 0;
  for (const auto& ext : exts) {
    double size = std::pow(static_cast<double>(ext->field().modulus()), static_cast<double>(ext->dim()));
    if (size > 65536.0) continue;
    for (unsigned n = 1; n <= 8; ++n) {
      auto cert = check_power_property(*ext, n, 64);
      bool truth = testing::power_property_exhaustive(*ext, n);
      INFO(ext->name() << " n = " << n << " via " << cert.method);
      if (cert.outcome == PowerOutcome::holds) {
        CHECK(truth);
        ++exact;
      } else if (cert.outcome == PowerOutcome::fails) {
        CHECK_FALSE(truth);
      } else {
        // The refutation search is only a semi-decision; inconclusive is
        // honest only when the property in fact holds.
        CHECK(truth);
      }
    }
  }
  CHECK(exact > 0);
}

TEST_CASE("verify_certificate rejects tampered certificates", "[classes]") {
  auto diag = m2_over_diagonal();
  const PrimeField& f = diag->field();
  auto sep = check_separable(*diag);
  REQUIRE(sep);
  // Perturb e by a vector that is not Casimir.
  Vec<PrimeField> bump = vec::unit(f, diag->tensor().dim(), 0);
  REQUIRE_FALSE(is_casimir(*diag, bump));
  CHECK_FALSE(verify_certificate(*diag, Certificate<PrimeField>(SeparableCert<PrimeField>{vec::add(f, sep->e, bump)})));
  // Wrong length.
  CHECK_FALSE(verify_certificate(*diag, Certificate<PrimeField>(SeparableCert<PrimeField>{Vec<PrimeField>(3, 0)})));

  auto d2 = check_depth_two(*diag, Side::left);
  REQUIRE(d2);
  auto broken = *d2;
  for (auto& b : broken.beta) b = b.scaled(f.zero());
  CHECK_FALSE(verify_certificate(*diag, Certificate<PrimeField>(broken)));

  auto h = check_hirata(*diag);
  REQUIRE(h);
  auto hb = *h;
  hb.witness.to.clear();
  hb.witness.back.clear();
  CHECK_FALSE(verify_certificate(*diag, Certificate<PrimeField>(hb)));
}

TEST_CASE("classification is deterministic and consistent", "[classes][property]") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    auto ext = testing::random_extension(rng);
    ClassReport<PrimeField> rep;
    REQUIRE_NOTHROW(rep = classify(*ext));
    CHECK(rep.implications.all());
    check_all_certificates(*ext, rep);
    auto again = classify(*ext);
    CHECK(class_report_json(ext->field(), rep).dump() == class_report_json(ext->field(), again).dump());
    // Separable implies weakly separable as report flags.
    if (rep.outcome("separable") == Outcome::holds) CHECK(rep.outcome("weakly_separable") == Outcome::holds);
  }
}

TEST_CASE("class subsets", "[classes]") {
  ClassifyOptions opt;
  opt.classes = {"liberal", "power"};
  auto rep = classify(*truncation(3), opt);
  REQUIRE(rep.results.size() == 1);
  CHECK(rep.results[0].name == "liberal");
  CHECK(rep.power.size() == 8);
  CHECK(rep.power[2].outcome == PowerOutcome::holds);
}
