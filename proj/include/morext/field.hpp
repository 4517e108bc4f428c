#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace morext {

/// Base of every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FieldMismatch : public Error {
 public:
  FieldMismatch() : Error("operands live over different fields") {}
};

enum class FieldKind { prime, rational };

/// Runtime description of a ground field, as it appears in input files.
struct FieldSpec {
  FieldKind kind = FieldKind::rational;
  std::uint32_t p = 0;

  static FieldSpec prime(std::uint32_t p) { return {FieldKind::prime, p}; }
  static FieldSpec rational() { return {FieldKind::rational, 0}; }

  std::string name() const {
    return kind == FieldKind::prime ? "F_" + std::to_string(p) : "Q";
  }
  bool operator==(const FieldSpec&) const = default;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic contract shared by the prime fields and the rationals. All
/// operations are const member functions on a small field object so that
/// the modulus can be chosen at runtime.
template <class F>
concept Field = std::equality_comparable<F> &&
    requires(const F& f, const typename F::value_type& a, std::int64_t n,
             std::string_view s) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.neg(a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.equal(a, a) } -> std::same_as<bool>;
  { f.from_int(n) } -> std::convertible_to<typename F::value_type>;
  { f.parse(s) } -> std::convertible_to<typename F::value_type>;
  { f.format(a) } -> std::convertible_to<std::string>;
  { f.spec() } -> std::same_as<FieldSpec>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
};

namespace detail {

inline std::int64_t parse_integer(std::string_view s) {
  if (s.empty()) throw Error("empty coefficient");
  std::size_t i = 0;
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw Error("malformed coefficient '" + std::string(s) + "'");
  std::int64_t v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw Error("malformed coefficient '" + std::string(s) + "'");
    v = v * 10 + (s[i] - '0');
    if (v > (std::int64_t{1} << 62)) throw Error("coefficient out of range");
  }
  return negative ? -v : v;
}

}  // namespace detail

/// The prime field F_p, 2 <= p < 2^31.
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint64_t p) : p_(static_cast<std::uint32_t>(p)) {
    if (p >= (std::uint64_t{1} << 31) || !is_prime(p))
      throw Error("modulus " + std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const {
    return a >= b ? a - b : a + (p_ - b);
  }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw Error("division by zero in " + spec().name());
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return static_cast<value_type>(t < 0 ? t + p_ : t);
  }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  value_type from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    return static_cast<value_type>(r < 0 ? r + p_ : r);
  }
  /// Accepts "k" or "a/b" with b invertible mod p.
  value_type parse(std::string_view s) const {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return from_int(detail::parse_integer(s));
    auto num = from_int(detail::parse_integer(s.substr(0, slash)));
    auto den = from_int(detail::parse_integer(s.substr(slash + 1)));
    return mul(num, inv(den));
  }
  std::string format(value_type a) const { return std::to_string(a); }

  FieldSpec spec() const { return FieldSpec::prime(p_); }
  std::uint64_t characteristic() const { return p_; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

/// The rationals, backed by GMP fractions kept in lowest terms.
class RationalField {
 public:
  using value_type = mpq_class;

  value_type zero() const { return mpq_class(0); }
  value_type one() const { return mpq_class(1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw Error("division by zero in Q");
    return 1 / a;
  }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type from_int(std::int64_t n) const { return mpq_class(static_cast<long>(n)); }
  value_type parse(std::string_view s) const {
    std::string text(s);
    if (text.empty()) throw Error("empty coefficient");
    if (text[0] == '+') text.erase(0, 1);
    mpq_class q;
    if (q.set_str(text, 10) != 0) throw Error("malformed coefficient '" + std::string(s) + "'");
    if (sgn(q.get_den()) == 0) throw Error("zero denominator in '" + std::string(s) + "'");
    q.canonicalize();
    return q;
  }
  std::string format(const value_type& a) const { return a.get_str(); }

  FieldSpec spec() const { return FieldSpec::rational(); }
  std::uint64_t characteristic() const { return 0; }

  bool operator==(const RationalField&) const = default;
};

static_assert(Field<PrimeField>);
static_assert(Field<RationalField>);

}  // namespace morext
