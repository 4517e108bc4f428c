#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace morext;
using testing::ints;

namespace {

/// Every d x d matrix over F_2.
void for_each_matrix(const PrimeField& f, std::size_t rows, std::size_t cols,
                     const std::function<void(const Matrix<PrimeField>&)>& visit) {
  testing::for_each_vector(f, rows * cols, [&](const Vec<PrimeField>& v) {
    visit(Matrix<PrimeField>::from_flat(f, rows, cols, v));
  });
}

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  REQUIRE((std::size_t{1} << k) == n);
  return k;
}

/// Counts B-derivations A -> A by brute force, checking Leibniz on all basis pairs.
std::size_t derivation_count(const Extension<PrimeField>& ext, bool central) {
  const auto& a = ext.algebra();
  const PrimeField& f = ext.field();
  const std::size_t d = a.dim();
  std::size_t n = 0;
  for_each_matrix(f, d, d, [&](const Matrix<PrimeField>& m) {
    for (const auto& b : ext.b().basis())
      if (!vec::is_zero(f, m.apply(b))) return;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        auto x = a.basis(i), y = a.basis(j);
        auto lhs = m.apply(a.mul(x, y));
        auto rhs = vec::add(f, a.mul(m.apply(x), y), a.mul(x, m.apply(y)));
        if (!vec::equal(f, lhs, rhs)) return;
      }
    if (central)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          auto dx = m.column(i);
          if (!vec::equal(f, a.mul(dx, a.basis(j)), a.mul(a.basis(j), dx))) return;
        }
    ++n;
  });
  return n;
}

}  // namespace

TEST_CASE("hom spaces agree with brute force", "[module][oracle]") {
  PrimeField f(2);
  for (const auto& a : testing::small_algebra_pool()) {
    if (a->dim() > 3) continue;
    auto reg = regular_bimodule(a);
    auto left = reg.left_module();
    auto homs = hom_space(left, left);
    std::size_t count = 0;
    for_each_matrix(f, a->dim(), a->dim(), [&](const Matrix<PrimeField>& m) {
      bool ok = true;
      for (std::size_t i = 0; i < a->dim(); ++i) ok = ok && m * reg.left_basis_action(i) == reg.left_basis_action(i) * m;
      count += ok;
    });
    // End of the regular left module is A^op, of dimension dim A.
    CHECK(homs.size() == a->dim());
    CHECK(count == (std::size_t{1} << homs.size()));
    for (const auto& h : homs) CHECK(is_module_map(h, left, left));
  }
}

TEST_CASE("summand witnesses", "[module]") {
  PrimeField f(2);
  auto a = truncated_poly_algebra(f, 2);
  auto reg = regular_bimodule(a).left_module();
  // The simple module k, with t acting by zero.
  Module<PrimeField> simple{f, 1, {}};
  for (const auto& g : a->generators()) {
    Matrix<PrimeField> m(f, 1, 1);
    m(0, 0) = g[0];
    simple.actions.push_back(m);
  }
  CHECK_FALSE(summand_witness(simple, reg));
  auto w = summand_witness(reg, reg);
  REQUIRE(w);
  CHECK(check_summand_witness(*w, reg, reg));
  CHECK(summand_witness(simple, simple));

  // A corrupted witness is rejected.
  auto bad = *w;
  for (auto& g : bad.back) g = g.scaled(f.zero());
  CHECK_FALSE(check_summand_witness(bad, reg, reg));
}

TEST_CASE("projective modules over a semisimple algebra", "[module]") {
  PrimeField f(2);
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  auto reg = regular_bimodule(m2).left_module();
  // Column space F_2^2 with the natural action.
  Module<PrimeField> column{f, 2, {}};
  for (const auto& g : m2->generators()) {
    Matrix<PrimeField> m(f, 2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) m(r, c) = g[r * 2 + c];
    column.actions.push_back(m);
  }
  CHECK(summand_witness(column, reg));
  CHECK(summand_witness(reg, column));
  CHECK(hom_space(column, column).size() == 1);
}

TEST_CASE("bimodule validity and restriction", "[bimodule]") {
  PrimeField f(3);
  auto a = truncated_poly_algebra(f, 6);
  auto reg = regular_bimodule(a);
  CHECK(reg.is_valid());
  CHECK(reg.invariants().size() == 6);
  auto b = subalgebra_closure(a, {a->basis(3)});
  auto res = restrict_bimodule(reg, b, b);
  CHECK(res.is_valid());
  CHECK(res.left()->dim() == 2);
  CHECK(bimodule_hom_space(reg, reg).size() == 6);

  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  auto r2 = regular_bimodule(m2);
  CHECK(bimodule_hom_space(r2, r2).size() == 1);
  CHECK(r2.invariants().size() == 1);

  // Left multiplication on both sides: the two actions do not commute.
  std::vector<Matrix<PrimeField>> l, r;
  for (std::size_t i = 0; i < 4; ++i) {
    l.push_back(m2->left_mul(m2->basis(i)));
    r.push_back(m2->left_mul(m2->basis(i)));
  }
  CHECK_FALSE(Bimodule<PrimeField>(m2, m2, 4, l, r).is_valid());
  CHECK_THROWS_AS(Bimodule<PrimeField>(m2, m2, 4, {}, r), DimensionMismatch);
}

TEST_CASE("bimodule summands", "[bimodule]") {
  PrimeField f(2);
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  auto diag = Extension<PrimeField>::create(m2, {m2->basis(0), m2->basis(3)});
  // M_2 (x)_D M_2 is a direct sum of two copies of M_2.
  CHECK(bimodule_summand_witness(diag->tensor().as_bimodule(), regular_bimodule(m2)));
  auto t = truncated_poly_algebra(f, 4);
  auto trunc = Extension<PrimeField>::create(t, {t->basis(0), t->basis(2)});
  CHECK_FALSE(bimodule_summand_witness(trunc->tensor().as_bimodule(), regular_bimodule(t)));
}

TEST_CASE("derivation spaces", "[derivation]") {
  PrimeField f(2);
  auto t = truncated_poly_algebra(f, 4);
  auto trunc = Extension<PrimeField>::create(t, {t->basis(0), t->basis(2)});
  CHECK(derivation_space(*trunc, DerivationFlags{true, false}).dim() == 4);
  CHECK(derivation_space(*trunc, DerivationFlags{true, true}).dim() == 4);
  CHECK(inner_derivation_space(*trunc).empty());

  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  auto diag = Extension<PrimeField>::create(m2, {m2->basis(0), m2->basis(3)});
  auto der = derivation_space(*diag, DerivationFlags{true, false});
  CHECK(der.dim() == 1);
  CHECK(derivation_space(*diag, DerivationFlags{true, true}).dim() == 0);
  for (const auto& v : diag->centralizer_basis())
    CHECK(is_derivation(*diag, regular_bimodule(m2), inner_derivation(*m2, v), DerivationFlags{true, false}));
  // A non-derivation: the identity map.
  CHECK_FALSE(is_derivation(*diag, regular_bimodule(m2), Matrix<PrimeField>::identity(f, 4), DerivationFlags{false, false}));
}

TEST_CASE("derivation dimensions agree with brute force", "[derivation][oracle]") {
  std::mt19937_64 rng(99);
  int checked = 0;
  while (checked < 25) {
    auto ext = testing::random_extension(rng);
    if (ext->dim() > 3) continue;
    ++checked;
    CHECK(derivation_space(*ext, DerivationFlags{true, false}).dim() == log2_exact(derivation_count(*ext, false)));
    CHECK(derivation_space(*ext, DerivationFlags{true, true}).dim() == log2_exact(derivation_count(*ext, true)));
  }
}
