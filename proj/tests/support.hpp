#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "morext/morext.hpp"

namespace testing {

using namespace morext;

template <Field F>
Vec<F> ints(const F& f, std::initializer_list<long> xs) {
  Vec<F> out;
  for (long x : xs) out.push_back(f.from_int(x));
  return out;
}

inline Matrix<PrimeField> random_matrix(const PrimeField& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  Matrix<PrimeField> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(static_cast<long>(rng() % f.modulus()));
  return m;
}

inline Vec<PrimeField> random_vec(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
  Vec<PrimeField> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(f.from_int(static_cast<long>(rng() % f.modulus())));
  return v;
}

/// Calls visit on every vector of F_p^n.
inline void for_each_vector(const PrimeField& f, std::size_t n, const std::function<void(const Vec<PrimeField>&)>& visit) {
  Vec<PrimeField> v(n, f.zero());
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < n && v[i] == f.modulus() - 1) v[i++] = 0;
    if (i == n) return;
    ++v[i];
  }
}

inline Matrix<PrimeField> random_invertible(const PrimeField& f, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    auto m = random_matrix(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

/// Upper triangular 2x2 matrices over f.
template <Field F>
AlgebraPtr<F> upper_triangular(const F& f) {
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  return subalgebra_closure(m2, {m2->basis(0), m2->basis(1)}).induced();
}

/// Algebras over F_2 of dimension at most 5 used as random seeds.
inline std::vector<AlgebraPtr<PrimeField>> small_algebra_pool() {
  PrimeField f(2);
  std::vector<AlgebraPtr<PrimeField>> pool;
  for (std::size_t m = 1; m <= 5; ++m) pool.push_back(truncated_poly_algebra(f, m));
  for (std::size_t n = 2; n <= 5; ++n) pool.push_back(group_algebra(cyclic_group_table(n), f));
  auto c2 = group_algebra(cyclic_group_table(2), f);
  pool.push_back(tensor_product_algebra(*c2, *c2));
  pool.push_back(matrix_algebra(*ground_field_algebra(f), 2));
  pool.push_back(upper_triangular(f));
  pool.push_back(polynomial_quotient_algebra(f, ints(f, {1, 1})));  // F_4
  pool.push_back(direct_product_algebra(*truncated_poly_algebra(f, 2), *truncated_poly_algebra(f, 2)));
  pool.push_back(direct_product_algebra(*ground_field_algebra(f), *upper_triangular(f)));
  pool.push_back(direct_product_algebra(*polynomial_quotient_algebra(f, ints(f, {1, 1})),
                                        *truncated_poly_algebra(f, 3)));
  pool.push_back(direct_product_algebra(*ground_field_algebra(f), *matrix_algebra(*ground_field_algebra(f), 2)));
  return pool;
}

/// Random extension over F_2: a pool algebra in a random basis, B the
/// closure of up to two random elements.
inline ExtensionPtr<PrimeField> random_extension(std::mt19937_64& rng) {
  PrimeField f(2);
  static const auto pool = small_algebra_pool();
  const auto& base = pool[rng() % pool.size()];
  auto a = change_basis(*base, random_invertible(f, base->dim(), rng));
  std::vector<Vec<PrimeField>> gens;
  std::size_t k = rng() % 3;
  for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vec(f, a->dim(), rng));
  return Extension<PrimeField>::create(a, subalgebra_closure(a, gens));
}

/// Exhaustive answer to {x^n : x in A} inside B over a finite field.
inline bool power_property_exhaustive(const Extension<PrimeField>& ext, unsigned n) {
  bool holds = true;
  for_each_vector(ext.field(), ext.dim(), [&](const Vec<PrimeField>& x) {
    if (holds && !ext.b().contains(ext.algebra().power(x, n))) holds = false;
  });
  return holds;
}

/// Exhaustive answers for n = 1..max_n in one pass over A.
inline std::vector<bool> power_table_exhaustive(const Extension<PrimeField>& ext, unsigned max_n) {
  std::vector<bool> holds(max_n, true);
  const auto& a = ext.algebra();
  for_each_vector(ext.field(), ext.dim(), [&](const Vec<PrimeField>& x) {
    Vec<PrimeField> xn = x;
    for (unsigned n = 1; n <= max_n; ++n) {
      if (n > 1) xn = a.mul(xn, x);
      if (holds[n - 1] && !ext.b().contains(xn)) holds[n - 1] = false;
    }
  });
  return holds;
}

}  // namespace testing
