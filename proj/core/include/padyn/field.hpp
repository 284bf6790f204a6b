#pragma once

// p-adic scalars over the dense subfield Q of Q_p.
//
// A nonzero scalar is stored as p^v * (n / d) with n, d coprime to p and
// d > 0. Valuations are therefore exact for every product, power and sum;
// the configured precision N only governs the digit view `unit()`, which
// returns the unit part reduced modulo p^N.

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "padyn/error.hpp"

namespace padyn {

inline constexpr int kDefaultPrecision = 64;
inline constexpr std::int64_t kInfiniteValuation = std::numeric_limits<std::int64_t>::max();

bool is_prime(std::uint64_t n);

class FieldConfig {
 public:
  explicit FieldConfig(std::uint32_t prime, int precision = kDefaultPrecision);

  std::uint32_t prime() const noexcept { return prime_; }
  int precision() const noexcept { return precision_; }
  mpz_class modulus() const;  // p^N

  friend bool operator==(const FieldConfig&, const FieldConfig&) = default;

 private:
  std::uint32_t prime_;
  int precision_;
};

/// An exact norm value: Zero, or p^e.
class NormExp {
 public:
  static NormExp zero() { return NormExp(); }
  static NormExp pow(std::int64_t e) { return NormExp(e); }
  static NormExp one() { return NormExp(0); }

  bool is_zero() const noexcept { return !exp_.has_value(); }
  /// Exponent e of p^e; throws for Zero.
  std::int64_t exponent() const;

  NormExp operator*(const NormExp& other) const;
  /// Division by a nonzero norm.
  NormExp operator/(const NormExp& other) const;
  NormExp power(std::int64_t n) const;

  friend bool operator==(const NormExp&, const NormExp&) = default;
  friend std::strong_ordering operator<=>(const NormExp& a, const NormExp& b);

  /// "0" or "p^e".
  std::string str() const;

 private:
  NormExp() = default;
  explicit NormExp(std::int64_t e) : exp_(e) {}

  std::optional<std::int64_t> exp_;
};

NormExp max(const NormExp& a, const NormExp& b);

class PadicScalar {
 public:
  /// The zero of `field`.
  explicit PadicScalar(FieldConfig field);

  static PadicScalar zero(FieldConfig field) { return PadicScalar(field); }
  static PadicScalar one(FieldConfig field);
  static PadicScalar from_integer(FieldConfig field, std::int64_t n);
  static PadicScalar from_rational(FieldConfig field, std::int64_t num, std::int64_t den);
  static PadicScalar from_rational(FieldConfig field, const mpz_class& num, const mpz_class& den);
  /// p^v exactly.
  static PadicScalar power_of_p(FieldConfig field, std::int64_t v);
  /// p^v * (unit_num / unit_den); the unit factors must be prime to p.
  static PadicScalar from_parts(FieldConfig field, std::int64_t v, mpz_class unit_num,
                                mpz_class unit_den);

  const FieldConfig& field() const noexcept { return field_; }
  bool is_zero() const noexcept { return zero_; }
  /// kInfiniteValuation for zero.
  std::int64_t valuation() const noexcept { return zero_ ? kInfiniteValuation : val_; }
  /// Unit digits u in [1, p^N), u not divisible by p. Throws for zero.
  mpz_class unit() const;
  const mpz_class& unit_numerator() const noexcept { return num_; }
  const mpz_class& unit_denominator() const noexcept { return den_; }
  /// The exact rational value.
  mpq_class to_rational() const;

  NormExp norm() const { return zero_ ? NormExp::zero() : NormExp::pow(-val_); }

  PadicScalar operator+(const PadicScalar& other) const;
  PadicScalar operator-(const PadicScalar& other) const;
  PadicScalar operator*(const PadicScalar& other) const;
  PadicScalar operator/(const PadicScalar& other) const;
  PadicScalar operator-() const;
  PadicScalar& operator+=(const PadicScalar& other) { return *this = *this + other; }
  PadicScalar& operator-=(const PadicScalar& other) { return *this = *this - other; }
  PadicScalar& operator*=(const PadicScalar& other) { return *this = *this * other; }

  PadicScalar inv() const;
  PadicScalar pow(std::int64_t n) const;

  friend bool operator==(const PadicScalar& a, const PadicScalar& b);

  /// Rational form, e.g. "-3/25".
  std::string str() const;
  /// Valuation/unit form, e.g. "5^-2*(3)".
  std::string padic_str() const;

 private:
  void check_same_field(const PadicScalar& other) const;
  void normalize();

  FieldConfig field_;
  bool zero_ = true;
  std::int64_t val_ = 0;
  mpz_class num_ = 0;
  mpz_class den_ = 1;
};

// Free-function spellings of the arithmetic.
inline PadicScalar add(const PadicScalar& a, const PadicScalar& b) { return a + b; }
inline PadicScalar mul(const PadicScalar& a, const PadicScalar& b) { return a * b; }
inline PadicScalar neg(const PadicScalar& a) { return -a; }
inline PadicScalar inv(const PadicScalar& a) { return a.inv(); }
inline PadicScalar pow(const PadicScalar& a, std::int64_t n) { return a.pow(n); }
inline NormExp norm(const PadicScalar& a) { return a.norm(); }

/// p-adic valuation of a nonzero integer.
std::int64_t valuation_of(const mpz_class& n, std::uint32_t p);

/// C(n, j) embedded in the field; 0 <= j <= n required.
PadicScalar binomial(std::int64_t n, std::int64_t j, FieldConfig field);

}  // namespace padyn
