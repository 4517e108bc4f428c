#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace morext;
using testing::ints;

TEST_CASE("prime field arithmetic", "[field]") {
  PrimeField f(7);
  for (long a = 1; a < 7; ++a) CHECK(f.mul(f.from_int(a), f.inv(f.from_int(a))) == f.one());
  CHECK(f.from_int(-1) == 6);
  CHECK(f.parse("3/4") == f.mul(3, f.inv(4)));
  CHECK(f.parse("-2") == 5);
  CHECK_THROWS_AS(f.parse("1/7"), Error);
  CHECK_THROWS_AS(f.parse("x"), Error);
  CHECK(f.format(f.parse("10")) == "3");
}

TEST_CASE("rational field arithmetic", "[field]") {
  RationalField q;
  CHECK(q.format(q.parse("-3/6")) == "-1/2");
  CHECK(q.equal(q.mul(q.parse("2/3"), q.inv(q.parse("2/3"))), q.one()));
  CHECK_THROWS_AS(q.parse("1/0"), Error);
  CHECK_THROWS_AS(q.inv(q.zero()), Error);
  CHECK(q.characteristic() == 0);
}

TEST_CASE("rref of a fixed rational matrix", "[linalg]") {
  RationalField q;
  auto m = Matrix<RationalField>::from_rows(q, {ints(q, {1, 2, 3}), ints(q, {2, 4, 7}), ints(q, {3, 6, 10})}, 3);
  auto r = rref(m);
  CHECK(r.pivots == std::vector<std::size_t>{0, 2});
  CHECK(vec::equal(q, r.matrix.row(0), ints(q, {1, 2, 0})));
  CHECK(vec::equal(q, r.matrix.row(1), ints(q, {0, 0, 1})));
  CHECK(vec::is_zero(q, r.matrix.row(2)));
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(vec::is_zero(q, m.apply(k[0])));
}

TEST_CASE("Hilbert matrix is invertible over Q", "[linalg]") {
  RationalField q;
  const std::size_t n = 5;
  Matrix<RationalField> h(q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = mpq_class(1, static_cast<unsigned long>(i + j + 1));
  CHECK(rank(h) == n);
  auto b = ints(q, {1, 0, 0, 0, 0});
  auto x = solve_linear(h, b);
  REQUIRE(x);
  CHECK(vec::equal(q, h.apply(*x), b));
  CHECK(q.format((*x)[0]) == "25");
}

TEST_CASE("kernel dimension matches brute-force enumeration", "[linalg][oracle]") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
      auto m = testing::random_matrix(f, r, c, rng);
      std::size_t zeros = 0;
      testing::for_each_vector(f, c, [&](const Vec<PrimeField>& v) { zeros += vec::is_zero(f, m.apply(v)); });
      auto k = kernel_basis(m);
      std::size_t expected = 1;
      for (std::size_t i = 0; i < k.size(); ++i) expected *= p;
      CHECK(zeros == expected);
      CHECK(rank(m) + k.size() == c);
      for (const auto& v : k) CHECK(vec::is_zero(f, m.apply(v)));
    }
  }
}

TEST_CASE("solve_linear agrees with exhaustive search", "[linalg][oracle]") {
  std::mt19937_64 rng(5);
  PrimeField f(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = testing::random_matrix(f, r, c, rng);
    auto b = testing::random_vec(f, r, rng);
    bool solvable = false;
    testing::for_each_vector(f, c, [&](const Vec<PrimeField>& v) { solvable = solvable || vec::equal(f, m.apply(v), b); });
    auto x = solve_linear(m, b);
    CHECK(x.has_value() == solvable);
    if (x) CHECK(vec::equal(f, m.apply(*x), b));
  }
}

TEST_CASE("span membership and containment", "[linalg]") {
  PrimeField f(5);
  std::vector<Vec<PrimeField>> vs{ints(f, {1, 2, 0}), ints(f, {0, 1, 1})};
  auto c = span_membership(f, vs, ints(f, {2, 0, 1}));
  REQUIRE(c);
  CHECK(vec::equal(f, vec::add(f, vec::scale(f, (*c)[0], vs[0]), vec::scale(f, (*c)[1], vs[1])), ints(f, {2, 0, 1})));
  CHECK_FALSE(span_membership(f, vs, ints(f, {0, 0, 1})));
  CHECK(span_dim(f, vs, 3) == 2);
  CHECK(span_contains(f, vs, {ints(f, {1, 3, 1})}, 3));
  CHECK_THROWS_AS(span_membership(f, vs, ints(f, {1, 0})), DimensionMismatch);
}

TEST_CASE("quotient projection and section", "[linalg]") {
  std::mt19937_64 rng(11);
  PrimeField f(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + rng() % 5;
    std::vector<SparseRow<PrimeField>> rels;
    for (std::size_t i = 0; i < rng() % n; ++i) rels.push_back(to_sparse(f, testing::random_vec(f, n, rng)));
    Quotient<PrimeField> q(f, n, rels);
    CHECK(q.dim() + q.relation_rank() == n);
    for (const auto& r : rels) CHECK(vec::is_zero(f, q.project(r)));
    for (const auto& r : q.relation_basis()) CHECK(q.is_relation(r));
    for (std::size_t i = 0; i < q.dim(); ++i) {
      auto e = vec::unit(f, q.dim(), i);
      CHECK(vec::equal(f, q.project(q.section(e)), e));
    }
    auto v = testing::random_vec(f, n, rng), w = testing::random_vec(f, n, rng);
    CHECK(vec::equal(f, q.project(vec::add(f, v, w)), vec::add(f, q.project(v), q.project(w))));
  }
}

TEST_CASE("dimension mismatches are reported", "[linalg]") {
  PrimeField f(2);
  Matrix<PrimeField> m(f, 2, 3);
  CHECK_THROWS_AS(solve_linear(m, ints(f, {1, 0, 1})), DimensionMismatch);
  CHECK_THROWS_AS(m * Matrix<PrimeField>(f, 2, 2), DimensionMismatch);
}
