#include "padyn/tailed.hpp"

#include <algorithm>

namespace padyn {

mpz_class binomial_integer(std::int64_t m, std::int64_t k) {
  if (m < 0 || k < 0) throw Error(ErrorCode::OutOfRange, "binomial with a negative argument");
  mpz_class c = 0;
  if (k > m) return c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
  return c;
}

namespace {

PadicScalar binom_scalar(std::int64_t m, std::int64_t k, const FieldConfig& field) {
  return PadicScalar::from_rational(field, binomial_integer(m, k), mpz_class(1));
}

}  // namespace

// ----------------------------------------------------------- GeometricTail

GeometricTail::GeometricTail(Index start, PadicScalar ratio, Coefficients coeffs)
    : start_(start), ratio_(std::move(ratio)) {
  if (ratio_.is_zero()) throw Error(ErrorCode::OutOfRange, "tail ratio must be nonzero");
  for (auto& [k, c] : coeffs) {
    if (k < 0) throw Error(ErrorCode::OutOfRange, "negative tail degree");
    if (!(c.field() == ratio_.field())) throw Error(ErrorCode::FieldMismatch, "tail coefficient field");
    if (!c.is_zero()) coeffs_.emplace(k, std::move(c));
  }
}

std::int64_t GeometricTail::min_degree() const {
  if (coeffs_.empty()) throw Error(ErrorCode::ZeroVector, "degree of a zero tail");
  return coeffs_.begin()->first;
}

std::int64_t GeometricTail::degree() const {
  if (coeffs_.empty()) throw Error(ErrorCode::ZeroVector, "degree of a zero tail");
  return coeffs_.rbegin()->first;
}

NormExp GeometricTail::max_coefficient_norm() const {
  NormExp best = NormExp::zero();
  for (const auto& [k, c] : coeffs_) best = max(best, c.norm());
  return best;
}

PadicScalar GeometricTail::poly(Index i) const {
  if (i < start_) throw Error(ErrorCode::OutOfRange, "tail evaluated before its start");
  const FieldConfig& field = ratio_.field();
  PadicScalar acc = PadicScalar::zero(field);
  const std::int64_t m = i - start_;
  for (const auto& [k, c] : coeffs_) {
    if (k > m) break;
    acc += c * binom_scalar(m, k, field);
  }
  return acc;
}

PadicScalar GeometricTail::value(Index i) const {
  PadicScalar p = poly(i);
  if (p.is_zero()) return p;
  return ratio_.pow(i) * p;
}

GeometricTail GeometricTail::rebased(Index new_start, FinVector& spill) const {
  if (new_start < start_) throw Error(ErrorCode::OutOfRange, "tail can only be rebased forward");
  if (new_start == start_) return *this;
  for (Index i = start_; i < new_start && !coeffs_.empty(); ++i) spill.accumulate(i, value(i));
  // C(i - s, k) = sum_j C(d, k - j) C(i - s', j) with d = s' - s.
  const std::int64_t d = new_start - start_;
  const FieldConfig& field = ratio_.field();
  Coefficients out;
  for (const auto& [k, c] : coeffs_) {
    for (std::int64_t j = std::max<std::int64_t>(0, k - d); j <= k; ++j) {
      PadicScalar term = c * binom_scalar(d, k - j, field);
      auto it = out.find(j);
      if (it == out.end()) {
        out.emplace(j, std::move(term));
      } else {
        it->second += term;
      }
    }
  }
  return GeometricTail(new_start, ratio_, std::move(out));
}

// ------------------------------------------------------------ TailedVector

TailedVector::TailedVector(FinVector head) : head_(std::move(head)) {}

TailedVector::TailedVector(FinVector head, GeometricTail tail) : head_(std::move(head)) {
  if (!(tail.ratio().field() == head_.field())) {
    throw Error(ErrorCode::FieldMismatch, "tail and head fields differ");
  }
  if (!head_.is_zero() && head_.max_index() >= tail.start()) {
    throw Error(ErrorCode::OutOfRange, "head overlaps the tail");
  }
  if (!in_domain(tail.start(), head_.domain())) {
    throw Error(ErrorCode::IndexOutOfDomain, "tail starts outside the index domain");
  }
  if (!tail.is_zero()) tail_.emplace(std::move(tail));
}

const FinVector& TailedVector::to_finite() const {
  if (tail_) throw Error(ErrorCode::InfiniteSupport, "vector has an infinite tail");
  return head_;
}

PadicScalar TailedVector::at(Index i) const {
  if (tail_ && i >= tail_->start()) return tail_->value(i);
  return head_.at(i);
}

namespace {

// Splits x into (head, tail rebased to `start`); a missing tail stays missing.
std::pair<FinVector, std::optional<GeometricTail>> rebase_to(const TailedVector& x, Index start) {
  FinVector head = x.head();
  if (!x.tail()) return {head, std::nullopt};
  GeometricTail t = x.tail()->rebased(start, head);
  return {head, std::move(t)};
}

void check_compatible(const TailedVector& x, const TailedVector& y) {
  if (x.domain() != y.domain()) throw Error(ErrorCode::DomainMismatch, "vectors over different index domains");
  if (!(x.field() == y.field())) throw Error(ErrorCode::FieldMismatch, "vectors over different fields");
}

Index common_start(const TailedVector& x, const TailedVector& y) {
  Index s = x.tail() ? x.tail()->start() : y.tail()->start();
  if (x.tail()) s = std::max(s, x.tail()->start());
  if (y.tail()) s = std::max(s, y.tail()->start());
  if (!x.head().is_zero()) s = std::max(s, x.head().max_index() + 1);
  if (!y.head().is_zero()) s = std::max(s, y.head().max_index() + 1);
  return s;
}

TailedVector combine(const TailedVector& x, const TailedVector& y, bool subtract) {
  check_compatible(x, y);
  if (!x.tail() && !y.tail()) {
    return subtract ? TailedVector(vec_sub(x.head(), y.head())) : TailedVector(vec_add(x.head(), y.head()));
  }
  if (x.tail() && y.tail() && !(x.tail()->ratio() == y.tail()->ratio())) {
    throw Error(ErrorCode::Unsupported, "sum of tails with different ratios");
  }
  const Index s = common_start(x, y);
  auto [hx, tx] = rebase_to(x, s);
  auto [hy, ty] = rebase_to(y, s);
  FinVector head = subtract ? vec_sub(hx, hy) : vec_add(hx, hy);
  const PadicScalar ratio = tx ? tx->ratio() : ty->ratio();
  GeometricTail::Coefficients coeffs;
  if (tx) coeffs = tx->coefficients();
  if (ty) {
    for (const auto& [k, c] : ty->coefficients()) {
      const PadicScalar add = subtract ? -c : c;
      auto it = coeffs.find(k);
      if (it == coeffs.end()) {
        coeffs.emplace(k, add);
      } else {
        it->second += add;
      }
    }
  }
  return TailedVector(std::move(head), GeometricTail(s, ratio, std::move(coeffs)));
}

}  // namespace

bool operator==(const TailedVector& a, const TailedVector& b) {
  if (a.domain() != b.domain() || !(a.field() == b.field())) return false;
  if (!a.tail() && !b.tail()) return a.head() == b.head();
  if (!a.tail() || !b.tail()) return false;  // a nonzero tail never vanishes identically
  if (!(a.tail()->ratio() == b.tail()->ratio())) return false;
  const Index s = common_start(a, b);
  auto [ha, ta] = rebase_to(a, s);
  auto [hb, tb] = rebase_to(b, s);
  return ha == hb && ta->coefficients() == tb->coefficients();
}

std::string TailedVector::str() const {
  if (!tail_) return head_.str();
  std::string s = head_.is_zero() ? std::string() : head_.str() + " ";
  s += "tail[" + std::to_string(tail_->start()) + ", ratio " + tail_->ratio().str() + ":";
  for (const auto& [k, c] : tail_->coefficients()) s += " " + std::to_string(k) + ":" + c.str();
  return s + "]";
}

NormExp sup_norm(const TailedVector& x) {
  NormExp best = sup_norm(x.head());
  if (!x.tail()) return best;
  const GeometricTail& t = *x.tail();
  const NormExp r = t.ratio().norm();
  if (r >= NormExp::one()) {
    throw Error(ErrorCode::NotInC0, "geometric tail with |ratio| >= 1 does not tend to zero");
  }
  // |x_i| <= |ratio|^i * max|c_k|, strictly decreasing in i; a nonzero
  // polynomial has no deg+1 consecutive integer roots, so the scan stops.
  const NormExp cmax = t.max_coefficient_norm();
  for (Index i = t.start() + t.min_degree();; ++i) {
    const NormExp bound = r.power(i) * cmax;
    if (bound <= best) break;
    best = max(best, t.value(i).norm());
  }
  return best;
}

TailedVector vec_add(const TailedVector& x, const TailedVector& y) { return combine(x, y, false); }

TailedVector vec_sub(const TailedVector& x, const TailedVector& y) { return combine(x, y, true); }

TailedVector vec_scale(const PadicScalar& lambda, const TailedVector& x) {
  FinVector head = vec_scale(lambda, x.head());
  if (!x.tail() || lambda.is_zero()) return TailedVector(std::move(head));
  GeometricTail::Coefficients coeffs;
  for (const auto& [k, c] : x.tail()->coefficients()) coeffs.emplace(k, lambda * c);
  return TailedVector(std::move(head), GeometricTail(x.tail()->start(), x.tail()->ratio(), std::move(coeffs)));
}

NormExp dist(const FinVector& x, const TailedVector& y) { return sup_norm(vec_sub(TailedVector(x), y)); }

bool ball_contains(const Ball& b, const TailedVector& x) { return b.admits(dist(b.center, x)); }

}  // namespace padyn
