#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace morext;
using testing::ints;

namespace {

/// d^2 minus the rank of x b (x) y - x (x) b y over every B basis element.
std::size_t tensor_dim_oracle(const Extension<PrimeField>& ext) {
  const auto& a = ext.algebra();
  const PrimeField& f = ext.field();
  const std::size_t d = a.dim();
  Echelon<PrimeField> rel(f, d * d);
  for (const auto& b : ext.b().basis())
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        Vec<PrimeField> r(d * d, f.zero());
        auto xb = a.mul(a.basis(i), b), by = a.mul(b, a.basis(k));
        for (std::size_t s = 0; s < d; ++s) {
          r[s * d + k] = f.add(r[s * d + k], xb[s]);
          r[i * d + s] = f.sub(r[i * d + s], by[s]);
        }
        rel.insert(r);
      }
  return d * d - rel.rank();
}

std::size_t count_commuting(const Extension<PrimeField>& ext, const std::vector<Vec<PrimeField>>& with) {
  std::size_t n = 0;
  const auto& a = ext.algebra();
  testing::for_each_vector(ext.field(), ext.dim(), [&](const Vec<PrimeField>& x) {
    bool ok = true;
    for (const auto& y : with) ok = ok && vec::equal(ext.field(), a.mul(x, y), a.mul(y, x));
    n += ok;
  });
  return n;
}

}  // namespace

TEST_CASE("structure constant validation", "[algebra]") {
  PrimeField f(2);
  // Two-dimensional table with e1 e1 = e0 but e0 not a unit.
  std::vector<Vec<PrimeField>> bad(4, Vec<PrimeField>(2, f.zero()));
  bad[0] = ints(f, {1, 0});
  bad[3] = ints(f, {1, 0});
  CHECK_THROWS_AS(Algebra<PrimeField>::create(f, 2, ints(f, {1, 0}), bad), UnitViolation);
  CHECK_THROWS_AS(Algebra<PrimeField>::create(f, 2, ints(f, {1}), bad), DimensionMismatch);

  // F_2[x]/(x^2 + x + 1).
  auto good = polynomial_quotient_algebra(f, ints(f, {1, 1}));
  CHECK(good->is_commutative());
  CHECK(good->dim() == 2);

  PrimeField g(3);
  std::vector<Vec<PrimeField>> nonassoc(9, Vec<PrimeField>(3, g.zero()));
  for (std::size_t i = 0; i < 3; ++i) {
    nonassoc[i] = vec::unit(g, 3, i);
    nonassoc[i * 3] = vec::unit(g, 3, i);
  }
  // (e1 e1) e2 = e1 but e1 (e1 e2) = e2.
  nonassoc[1 * 3 + 1] = vec::unit(g, 3, 2);
  nonassoc[2 * 3 + 2] = vec::unit(g, 3, 1);
  nonassoc[1 * 3 + 2] = vec::unit(g, 3, 1);
  CHECK_THROWS_AS(Algebra<PrimeField>::create(g, 3, vec::unit(g, 3, 0), nonassoc), AssociativityViolation);
}

TEST_CASE("group algebra needs a group table", "[algebra]") {
  PrimeField f(2);
  CHECK_THROWS_AS(group_algebra({{0, 1}, {1, 1}}, f), NotAGroup);
  auto c3 = group_algebra(cyclic_group_table(3), f);
  CHECK(c3->dim() == 3);
  CHECK(c3->is_commutative());
}

TEST_CASE("matrix algebra", "[algebra]") {
  PrimeField f(2);
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  CHECK(m2->dim() == 4);
  CHECK_FALSE(m2->is_commutative());
  // E_12 E_21 = E_11, E_21 E_12 = E_22.
  CHECK(vec::equal(f, m2->mul(m2->basis(1), m2->basis(2)), m2->basis(0)));
  CHECK(vec::equal(f, m2->mul(m2->basis(2), m2->basis(1)), m2->basis(3)));
  CHECK(center(*m2).size() == 1);
  auto over_poly = matrix_algebra(*truncated_poly_algebra(f, 4), 2);
  CHECK(over_poly->dim() == 16);
  CHECK(center(*over_poly).size() == 4);
}

TEST_CASE("subalgebra closure and membership", "[algebra]") {
  PrimeField f(3);
  auto a = truncated_poly_algebra(f, 6);
  auto b = subalgebra_closure(a, {a->basis(3)});
  CHECK(b.dim() == 2);
  CHECK(b.contains(a->basis(0)));
  CHECK_FALSE(b.contains(a->basis(1)));
  CHECK(vec::equal(f, b.to_ambient(*b.to_local(a->basis(3))), a->basis(3)));
  CHECK(subalgebra_closure(a, {a->basis(2)}).dim() == 3);
  CHECK_THROWS_AS(SubalgebraEmbedding<PrimeField>::from_span(a, {a->basis(1)}), NotASubalgebra);
  CHECK_THROWS_AS(SubalgebraEmbedding<PrimeField>::from_span(a, {a->basis(0), a->basis(1)}), NotASubalgebra);
}

TEST_CASE("change of basis preserves structure", "[algebra][property]") {
  std::mt19937_64 rng(3);
  PrimeField f(2);
  for (const auto& a : testing::small_algebra_pool()) {
    auto p = testing::random_invertible(f, a->dim(), rng);
    auto b = change_basis(*a, p);
    b->validate();
    CHECK(b->is_commutative() == a->is_commutative());
    CHECK(center(*b).size() == center(*a).size());
    // P maps products in the new basis to products in the old one.
    for (std::size_t i = 0; i < a->dim(); ++i)
      for (std::size_t j = 0; j < a->dim(); ++j)
        CHECK(vec::equal(f, p.apply(b->mul(b->basis(i), b->basis(j))), a->mul(p.column(i), p.column(j))));
  }
}

TEST_CASE("tensor, opposite and direct product", "[algebra]") {
  PrimeField f(2);
  auto ut = testing::upper_triangular(f);
  CHECK(ut->dim() == 3);
  auto op = opposite_algebra(*ut);
  CHECK(vec::equal(f, op->mul(op->basis(0), op->basis(1)), ut->mul(ut->basis(1), ut->basis(0))));
  CHECK(tensor_product_algebra(*ut, *op)->dim() == 9);
  auto prod = direct_product_algebra(*ut, *ground_field_algebra(f));
  CHECK(prod->dim() == 4);
  CHECK(center(*prod).size() == 2);
}

TEST_CASE("extension caches", "[algebra][extension]") {
  PrimeField f(2);
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  auto diag = Extension<PrimeField>::create(m2, {m2->basis(0), m2->basis(3)});
  CHECK(diag->centralizer_basis().size() == 2);
  CHECK(diag->center_basis().size() == 1);
  CHECK(diag->tensor().dim() == 8);

  auto t = truncated_poly_algebra(f, 4);
  auto trunc = Extension<PrimeField>::create(t, {t->basis(0), t->basis(2)});
  CHECK(trunc->centralizer_basis().size() == 4);
  CHECK(trunc->tensor().dim() == 8);

  auto self = Extension<PrimeField>::create(m2, {m2->basis(0), m2->basis(1), m2->basis(2), m2->basis(3)});
  CHECK(self->tensor().dim() == 4);
  CHECK(self->centralizer_basis().size() == 1);
}

TEST_CASE("extension invariants on random extensions", "[extension][property][oracle]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    auto ext = testing::random_extension(rng);
    const PrimeField& f = ext->field();
    const std::size_t d = ext->dim();
    CHECK(span_contains(f, ext->centralizer_basis(), ext->center_basis(), d));
    CHECK(span_contains(f, ext->centralizer_basis(), {ext->algebra().unit()}, d));
    CHECK(ext->tensor().dim() == tensor_dim_oracle(*ext));
    std::size_t v_points = std::size_t{1} << ext->centralizer_basis().size();
    CHECK(count_commuting(*ext, ext->b().basis()) == v_points);
    std::size_t c_points = std::size_t{1} << ext->center_basis().size();
    std::vector<Vec<PrimeField>> all;
    for (std::size_t i = 0; i < d; ++i) all.push_back(ext->algebra().basis(i));
    CHECK(count_commuting(*ext, all) == c_points);
    // mu(x (x) y) = x y.
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k)
        CHECK(vec::equal(f, ext->tensor().multiply(ext->tensor().project_pure(ext->algebra().basis(i),
                                                                              ext->algebra().basis(k))),
                         ext->algebra().mul(ext->algebra().basis(i), ext->algebra().basis(k))));
  }
}

TEST_CASE("trivial extension algebra", "[extension]") {
  PrimeField f(3);
  auto b = truncated_poly_algebra(f, 2);
  auto ext = trivial_extension_algebra(b, regular_bimodule(b));
  CHECK(ext->dim() == 4);
  CHECK(ext->b().dim() == 2);
  // S = the last two coordinates squares to zero.
  const auto& a = ext->algebra();
  for (std::size_t i = 2; i < 4; ++i)
    for (std::size_t j = 2; j < 4; ++j) CHECK(vec::is_zero(f, a.mul(a.basis(i), a.basis(j))));
}
