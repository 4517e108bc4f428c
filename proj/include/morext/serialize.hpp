#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "morext/catalog.hpp"
#include "morext/certificate.hpp"

namespace morext {

using Json = nlohmann::ordered_json;

class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error("parse error at " + where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("invalid extension: " + what) {}
};

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

inline Json field_json(const FieldSpec& s) {
  if (s.kind == FieldKind::prime) return Json{{"kind", "prime"}, {"p", s.p}};
  return Json{{"kind", "rational"}};
}

template <Field F>
Json vec_json(const F& f, const Vec<F>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(f.format(x));
  return out;
}

template <Field F>
Json matrix_json(const Matrix<F>& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vec_json(m.field(), m.row(r)));
  return out;
}

template <Field F>
Json vecs_json(const F& f, const std::vector<Vec<F>>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(vec_json(f, v));
  return out;
}

template <Field F>
Json matrices_json(const std::vector<Matrix<F>>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(matrix_json(m));
  return out;
}

template <Field F>
Json algebra_json(const Algebra<F>& a) {
  const F& f = a.field();
  Json mul = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& [k, c] : a.basis_product(i, j)) mul.push_back(Json::array({i, j, k, f.format(c)}));
  return Json{{"dim", a.dim()}, {"unit", vec_json(f, a.unit())}, {"mul", std::move(mul)}};
}

template <Field F>
Json extension_json(const Extension<F>& ext) {
  Json out;
  if (!ext.name().empty()) out["name"] = ext.name();
  out["field"] = field_json(ext.field().spec());
  out["algebra"] = algebra_json(ext.algebra());
  out["subalgebra"] = Json{{"basis", vecs_json(ext.field(), ext.b().basis())}};
  return out;
}

inline Json extension_json(const AnyExtension& ext) {
  return std::visit([](const auto& e) { return extension_json(*e); }, ext);
}

template <Field F>
Json idempotent_json(const F& f, const IdempotentSpec<F>& e) {
  Json rows = Json::array();
  for (const auto& row : e.entries) rows.push_back(vecs_json(f, row));
  return Json{{"k", e.k}, {"entries", std::move(rows)}};
}

template <Field F>
Json certificate_json(const F& f, const Certificate<F>& cert) {
  struct Visitor {
    const F& f;
    Json operator()(const SeparableCert<F>& c) const { return Json{{"e", vec_json(f, c.e)}}; }
    Json operator()(const HirataCert<F>& c) const {
      return Json{{"f", matrices_json(c.witness.to)}, {"g", matrices_json(c.witness.back)}};
    }
    Json operator()(const StronglySeparableCert<F>& c) const {
      return Json{{"v", vecs_json(f, c.v)}, {"e", vecs_json(f, c.e)}};
    }
    Json operator()(const DepthTwoCert<F>& c) const {
      return Json{{"side", side_name(c.side)}, {"t", vecs_json(f, c.t)}, {"beta", matrices_json(c.beta)}};
    }
    Json operator()(const LiberalCert<F>& c) const { return Json{{"v", vecs_json(f, c.v)}}; }
    Json operator()(const WeaklySeparableCert<F>& c) const {
      return Json{{"derivations", matrices_json(c.derivations)}, {"inner", vecs_json(f, c.inner)}};
    }
    Json operator()(const WeaklyQuasiSeparableCert& c) const {
      return Json{{"derivation_dim", c.derivation_dim}, {"central_dim", c.central_dim}};
    }
    Json operator()(const TrivialCert<F>& c) const { return Json{{"complement", vecs_json(f, c.complement)}}; }
    Json operator()(const PowerPropertyCert<F>& c) const {
      Json out{{"n", c.n}, {"outcome", power_outcome_name(c.outcome)}, {"method", c.method}};
      if (c.counterexample) out["counterexample"] = vec_json(f, *c.counterexample);
      return out;
    }
  };
  return std::visit(Visitor{f}, cert);
}

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

namespace detail {

inline const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "." + key, "missing");
  return *it;
}

inline std::size_t index_value(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

template <Field F>
typename F::value_type coeff(const F& f, const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "coefficients must be strings");
  try {
    return f.parse(j.get<std::string>());
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

template <Field F>
Vec<F> coeff_vec(const F& f, const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  if (j.size() != n) throw ParseError(where, "expected " + std::to_string(n) + " coefficients");
  Vec<F> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(coeff(f, j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline FieldSpec parse_field(const Json& j) {
  auto kind = member(j, "kind", "field");
  if (kind == "prime") {
    auto p = index_value(member(j, "p", "field"), "field.p");
    if (p < 2 || p >= (std::size_t{1} << 31) || !is_prime(p)) throw ParseError("field.p", "not a prime below 2^31");
    return FieldSpec::prime(static_cast<std::uint32_t>(p));
  }
  if (kind == "rational") return FieldSpec::rational();
  throw ParseError("field.kind", "expected \"prime\" or \"rational\"");
}

template <Field F>
ExtensionPtr<F> parse_with(const F& f, const Json& doc) {
  const auto& alg = member(doc, "algebra", "document");
  const std::size_t d = index_value(member(alg, "dim", "algebra"), "algebra.dim");
  if (d == 0) throw ParseError("algebra.dim", "must be positive");
  auto unit = coeff_vec(f, member(alg, "unit", "algebra"), d, "algebra.unit");
  const auto& mul = member(alg, "mul", "algebra");
  if (!mul.is_array()) throw ParseError("algebra.mul", "expected an array");
  std::vector<Vec<F>> products(d * d, Vec<F>(d, f.zero()));
  for (std::size_t t = 0; t < mul.size(); ++t) {
    const std::string where = "algebra.mul[" + std::to_string(t) + "]";
    const auto& e = mul[t];
    if (!e.is_array() || e.size() != 4) throw ParseError(where, "expected [i, j, k, \"c\"]");
    std::size_t idx[3];
    for (int s = 0; s < 3; ++s) {
      idx[s] = index_value(e[s], where + "[" + std::to_string(s) + "]");
      if (idx[s] >= d) throw ParseError(where + "[" + std::to_string(s) + "]", "index out of range");
    }
    auto& slot = products[idx[0] * d + idx[1]][idx[2]];
    slot = f.add(slot, coeff(f, e[3], where + "[3]"));
  }
  const auto& sub = member(doc, "subalgebra", "document");
  const auto& basis = member(sub, "basis", "subalgebra");
  if (!basis.is_array()) throw ParseError("subalgebra.basis", "expected an array");
  std::vector<Vec<F>> span;
  for (std::size_t i = 0; i < basis.size(); ++i)
    span.push_back(coeff_vec(f, basis[i], d, "subalgebra.basis[" + std::to_string(i) + "]"));
  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("name", "expected a string");
    name = it->template get<std::string>();
  }
  try {
    auto a = Algebra<F>::create(f, d, std::move(unit), std::move(products));
    return Extension<F>::create(a, span, name);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

inline Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
}

}  // namespace detail

inline AnyExtension parse_extension(const std::string& text) {
  auto doc = detail::parse_document(text);
  if (!doc.is_object()) throw ParseError("document", "expected an object");
  auto spec = detail::parse_field(detail::member(doc, "field", "document"));
  if (spec.kind == FieldKind::prime) return detail::parse_with(PrimeField(spec.p), doc);
  return detail::parse_with(RationalField(), doc);
}

/// {"k": k, "entries": k x k arrays of B-coordinate vectors}.
template <Field F>
IdempotentSpec<F> parse_idempotent(const Extension<F>& ext, const std::string& text) {
  auto doc = detail::parse_document(text);
  const F& f = ext.field();
  const std::size_t db = ext.b().dim();
  IdempotentSpec<F> out;
  out.k = detail::index_value(detail::member(doc, "k", "document"), "k");
  if (out.k == 0) throw ParseError("k", "must be positive");
  const auto& rows = detail::member(doc, "entries", "document");
  if (!rows.is_array() || rows.size() != out.k) throw ParseError("entries", "expected k rows");
  for (std::size_t s = 0; s < out.k; ++s) {
    const std::string where = "entries[" + std::to_string(s) + "]";
    if (!rows[s].is_array() || rows[s].size() != out.k) throw ParseError(where, "expected k entries");
    std::vector<Vec<F>> row;
    for (std::size_t t = 0; t < out.k; ++t)
      row.push_back(detail::coeff_vec(f, rows[s][t], db, where + "[" + std::to_string(t) + "]"));
    out.entries.push_back(std::move(row));
  }
  return out;
}

}  // namespace morext
