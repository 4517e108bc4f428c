#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "morext/extension.hpp"

namespace morext {

using AnyExtension = std::variant<ExtensionPtr<PrimeField>, ExtensionPtr<RationalField>>;

/// An idempotent E in M_k(B), entries in coordinates of the subalgebra basis.
template <Field F>
struct IdempotentSpec {
  std::size_t k = 0;
  std::vector<std::vector<Vec<F>>> entries;
};

using AnyIdempotent = std::variant<IdempotentSpec<PrimeField>, IdempotentSpec<RationalField>>;

struct CatalogEntry {
  std::string name;
  std::string description;
  AnyExtension extension;
  AnyIdempotent idempotent;  // default idempotent progenerator for transport
};

class UnknownCatalogEntry : public Error {
 public:
  explicit UnknownCatalogEntry(const std::string& name) : Error("unknown catalog entry: " + name) {}
};

namespace detail {

template <Field F>
ExtensionPtr<F> m2_over_diagonal(const F& f, const std::string& name) {
  auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
  return Extension<F>::create(m2, {m2->basis(0), m2->basis(3)}, name);
}

template <Field F>
ExtensionPtr<F> truncation(std::uint32_t p, const std::string& name) {
  F f(p);
  auto a = truncated_poly_algebra(f, 2 * p);
  return Extension<F>::create(a, {a->basis(0), a->basis(p)}, name);
}

/// [[1, 1], [0, 0]] over B: always idempotent, image isomorphic to B.
template <Field F>
IdempotentSpec<F> row_idempotent(const ExtensionPtr<F>& ext) {
  const auto& b = *ext->b().induced();
  return {2, {{b.unit(), b.unit()}, {b.zero(), b.zero()}}};
}

}  // namespace detail

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  {
    PrimeField f(3);
    auto m2 = matrix_algebra(*ground_field_algebra(f), 2);
    std::vector<Vec<PrimeField>> all;
    for (std::size_t i = 0; i < 4; ++i) all.push_back(m2->basis(i));
    auto ext = Extension<PrimeField>::create(m2, all, "m2-f3-identity");
    // E = E_11 in M_1(B): N = B E_11 is a column of M_2(F_3), and A' = F_3.
    auto e11 = *ext->b().to_local(m2->basis(0));
    out.push_back({"m2-f3-identity", "M_2(F_3) over itself", ext, IdempotentSpec<PrimeField>{1, {{e11}}}});
  }
  {
    auto ext = detail::m2_over_diagonal(PrimeField(2), "m2diag");
    const auto& b = *ext->b().induced();
    auto e11 = *ext->b().to_local(ext->algebra().basis(0));
    out.push_back({"m2diag", "M_2(F_2) over its diagonal", ext,
                   IdempotentSpec<PrimeField>{2, {{b.unit(), b.zero()}, {b.zero(), e11}}}});
  }
  for (std::uint32_t p : {2u, 3u}) {
    auto name = "trunc-p" + std::to_string(p);
    auto ext = detail::truncation<PrimeField>(p, name);
    out.push_back({name,
                   "F_" + std::to_string(p) + "[t]/(t^" + std::to_string(2 * p) + ") over span{1, t^" +
                       std::to_string(p) + "}",
                   ext, detail::row_idempotent(ext)});
  }
  {
    PrimeField f(2);
    auto b = ground_field_algebra(f);
    auto ext = trivial_extension_algebra(b, regular_bimodule(b), "trivial-f2");
    out.push_back({"trivial-f2", "F_2 extended by the square-zero bimodule F_2", ext, detail::row_idempotent(ext)});
  }
  {
    PrimeField f(2);
    auto a = group_algebra(cyclic_group_table(2), f);
    auto ext = Extension<PrimeField>::create(a, {a->unit()}, "c2-f2");
    out.push_back({"c2-f2", "F_2[C_2] over F_2", ext, detail::row_idempotent(ext)});
  }
  {
    auto ext = detail::m2_over_diagonal(RationalField(), "m2diag-q");
    const auto& b = *ext->b().induced();
    auto e11 = *ext->b().to_local(ext->algebra().basis(0));
    out.push_back({"m2diag-q", "M_2(Q) over its diagonal", ext,
                   IdempotentSpec<RationalField>{2, {{b.unit(), b.zero()}, {b.zero(), e11}}}});
  }
  return out;
}

inline CatalogEntry catalog_entry(const std::string& name) {
  for (auto& e : catalog())
    if (e.name == name) return e;
  throw UnknownCatalogEntry(name);
}

}  // namespace morext
