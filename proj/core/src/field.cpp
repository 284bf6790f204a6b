#include "padyn/field.hpp"

#include <sstream>
#include <utility>

namespace padyn {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::IndexOutOfDomain: return "IndexOutOfDomain";
    case ErrorCode::WrongDomain: return "WrongDomain";
    case ErrorCode::NotInC0: return "NotInC0";
    case ErrorCode::InfiniteSupport: return "InfiniteSupport";
    case ErrorCode::PrecedenceViolation: return "PrecedenceViolation";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::ParameterViolation: return "ParameterViolation";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ZeroScalar: return "ZeroScalar";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldConfig::FieldConfig(std::uint32_t prime, int precision) : prime_(prime), precision_(precision) {
  if (!is_prime(prime)) {
    throw Error(ErrorCode::InvalidField, std::to_string(prime) + " is not prime");
  }
  if (precision < 1) {
    throw Error(ErrorCode::InvalidField, "precision must be >= 1");
  }
}

mpz_class FieldConfig::modulus() const {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), prime_, static_cast<unsigned long>(precision_));
  return m;
}

// ---------------------------------------------------------------- NormExp

std::int64_t NormExp::exponent() const {
  if (!exp_) throw Error(ErrorCode::OutOfRange, "exponent of the zero norm");
  return *exp_;
}

NormExp NormExp::operator*(const NormExp& other) const {
  if (is_zero() || other.is_zero()) return zero();
  return pow(*exp_ + *other.exp_);
}

NormExp NormExp::operator/(const NormExp& other) const {
  if (other.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero norm");
  if (is_zero()) return zero();
  return pow(*exp_ - *other.exp_);
}

NormExp NormExp::power(std::int64_t n) const {
  if (n == 0) return one();
  if (is_zero()) return zero();
  return pow(*exp_ * n);
}

std::strong_ordering operator<=>(const NormExp& a, const NormExp& b) {
  if (a.is_zero() || b.is_zero()) {
    return static_cast<int>(!a.is_zero()) <=> static_cast<int>(!b.is_zero());
  }
  return *a.exp_ <=> *b.exp_;
}

std::string NormExp::str() const {
  if (is_zero()) return "0";
  return "p^" + std::to_string(*exp_);
}

NormExp max(const NormExp& a, const NormExp& b) { return a < b ? b : a; }

// ------------------------------------------------------------ PadicScalar

std::int64_t valuation_of(const mpz_class& n, std::uint32_t p) {
  if (n == 0) return kInfiniteValuation;
  mpz_class rest;
  mpz_class prime = p;
  return static_cast<std::int64_t>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

namespace {

// Strips the factors of p from n and returns how many there were.
std::int64_t remove_p(mpz_class& n, std::uint32_t p) {
  if (n == 0) return 0;
  mpz_class prime = p;
  return static_cast<std::int64_t>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

mpz_class p_power(std::uint32_t p, std::int64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

PadicScalar::PadicScalar(FieldConfig field) : field_(field) {}

PadicScalar PadicScalar::one(FieldConfig field) { return from_integer(field, 1); }

PadicScalar PadicScalar::from_integer(FieldConfig field, std::int64_t n) {
  return from_rational(field, n, 1);
}

PadicScalar PadicScalar::from_rational(FieldConfig field, std::int64_t num, std::int64_t den) {
  return from_rational(field, mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
}

PadicScalar PadicScalar::from_rational(FieldConfig field, const mpz_class& num,
                                       const mpz_class& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  PadicScalar s(field);
  if (num == 0) return s;
  s.zero_ = false;
  s.num_ = num;
  s.den_ = den;
  s.val_ = 0;
  s.normalize();
  return s;
}

PadicScalar PadicScalar::power_of_p(FieldConfig field, std::int64_t v) {
  return from_parts(field, v, 1, 1);
}

PadicScalar PadicScalar::from_parts(FieldConfig field, std::int64_t v, mpz_class unit_num,
                                    mpz_class unit_den) {
  if (unit_den == 0) throw Error(ErrorCode::DivisionByZero, "unit with zero denominator");
  PadicScalar s(field);
  if (unit_num == 0) return s;
  s.zero_ = false;
  s.num_ = std::move(unit_num);
  s.den_ = std::move(unit_den);
  s.val_ = v;
  s.normalize();
  return s;
}

void PadicScalar::normalize() {
  if (num_ == 0) {
    zero_ = true;
    val_ = 0;
    num_ = 0;
    den_ = 1;
    return;
  }
  val_ += remove_p(num_, field_.prime());
  val_ -= remove_p(den_, field_.prime());
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    mpz_divexact(num_.get_mpz_t(), num_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

void PadicScalar::check_same_field(const PadicScalar& other) const {
  if (!(field_ == other.field_)) {
    throw Error(ErrorCode::FieldMismatch, "scalars belong to different fields");
  }
}

mpz_class PadicScalar::unit() const {
  if (zero_) throw Error(ErrorCode::OutOfRange, "unit of zero");
  const mpz_class mod = field_.modulus();
  mpz_class inv_den;
  mpz_invert(inv_den.get_mpz_t(), den_.get_mpz_t(), mod.get_mpz_t());
  mpz_class u = num_ * inv_den;
  mpz_mod(u.get_mpz_t(), u.get_mpz_t(), mod.get_mpz_t());
  return u;
}

mpq_class PadicScalar::to_rational() const {
  if (zero_) return mpq_class(0);
  mpq_class q(num_, den_);
  if (val_ >= 0) {
    q *= mpq_class(p_power(field_.prime(), val_));
  } else {
    q /= mpq_class(p_power(field_.prime(), -val_));
  }
  q.canonicalize();
  return q;
}

PadicScalar PadicScalar::operator+(const PadicScalar& other) const {
  check_same_field(other);
  if (zero_) return other;
  if (other.zero_) return *this;
  const PadicScalar& lo = val_ <= other.val_ ? *this : other;
  const PadicScalar& hi = val_ <= other.val_ ? other : *this;
  PadicScalar r(field_);
  r.zero_ = false;
  r.val_ = lo.val_;
  if (lo.den_ == hi.den_) {
    r.num_ = lo.num_ + p_power(field_.prime(), hi.val_ - lo.val_) * hi.num_;
    r.den_ = lo.den_;
  } else {
    r.num_ = lo.num_ * hi.den_ + p_power(field_.prime(), hi.val_ - lo.val_) * hi.num_ * lo.den_;
    r.den_ = lo.den_ * hi.den_;
  }
  r.normalize();
  return r;
}

PadicScalar PadicScalar::operator-() const {
  PadicScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

PadicScalar PadicScalar::operator-(const PadicScalar& other) const { return *this + (-other); }

PadicScalar PadicScalar::operator*(const PadicScalar& other) const {
  check_same_field(other);
  if (zero_ || other.zero_) return PadicScalar(field_);
  PadicScalar r(field_);
  r.zero_ = false;
  r.val_ = val_ + other.val_;
  r.num_ = num_ * other.num_;
  r.den_ = den_ * other.den_;
  r.normalize();
  return r;
}

PadicScalar PadicScalar::inv() const {
  if (zero_) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  PadicScalar r(field_);
  r.zero_ = false;
  r.val_ = -val_;
  r.num_ = den_;
  r.den_ = num_;
  if (r.den_ < 0) {
    r.num_ = -r.num_;
    r.den_ = -r.den_;
  }
  return r;
}

PadicScalar PadicScalar::operator/(const PadicScalar& other) const {
  check_same_field(other);
  return *this * other.inv();
}

PadicScalar PadicScalar::pow(std::int64_t n) const {
  if (n < 0) return inv().pow(-n);
  if (n == 0) return one(field_);
  if (zero_) return *this;
  PadicScalar r(field_);
  r.zero_ = false;
  r.val_ = val_ * n;
  mpz_pow_ui(r.num_.get_mpz_t(), num_.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(r.den_.get_mpz_t(), den_.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

bool operator==(const PadicScalar& a, const PadicScalar& b) {
  if (!(a.field_ == b.field_)) return false;
  if (a.zero_ || b.zero_) return a.zero_ == b.zero_;
  return a.val_ == b.val_ && a.num_ == b.num_ && a.den_ == b.den_;
}

std::string PadicScalar::str() const {
  const mpq_class q = to_rational();
  std::ostringstream os;
  os << q.get_num() << "/" << q.get_den();
  return os.str();
}

std::string PadicScalar::padic_str() const {
  if (zero_) return "0";
  std::ostringstream os;
  os << field_.prime() << "^" << val_ << "*(" << num_;
  if (den_ != 1) os << "/" << den_;
  os << ")";
  return os.str();
}

PadicScalar binomial(std::int64_t n, std::int64_t j, FieldConfig field) {
  if (n < 0 || j < 0 || j > n) {
    throw Error(ErrorCode::OutOfRange,
                "binomial(" + std::to_string(n) + ", " + std::to_string(j) + ") out of range");
  }
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
  return PadicScalar::from_rational(field, c, 1);
}

}  // namespace padyn
