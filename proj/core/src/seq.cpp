#include "padyn/seq.hpp"

namespace padyn {

std::string_view to_string(IndexDomain d) {
  return d == IndexDomain::Naturals ? "N" : "Z";
}

bool in_domain(Index i, IndexDomain d) { return d == IndexDomain::Integers || i >= 1; }

FinVector FinVector::basis(FieldConfig field, Index n, IndexDomain domain) {
  FinVector e(field, domain);
  e.set(n, PadicScalar::one(field));
  return e;
}

void FinVector::check_index(Index i) const {
  if (!in_domain(i, domain_)) {
    throw Error(ErrorCode::IndexOutOfDomain,
                "index " + std::to_string(i) + " outside " + std::string(to_string(domain_)));
  }
}

Index FinVector::min_index() const {
  if (entries_.empty()) throw Error(ErrorCode::ZeroVector, "support of the zero vector");
  return entries_.begin()->first;
}

Index FinVector::max_index() const {
  if (entries_.empty()) throw Error(ErrorCode::ZeroVector, "support of the zero vector");
  return entries_.rbegin()->first;
}

PadicScalar FinVector::at(Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? PadicScalar::zero(field_) : it->second;
}

void FinVector::set(Index i, const PadicScalar& value) {
  check_index(i);
  if (!(value.field() == field_)) throw Error(ErrorCode::FieldMismatch, "entry field differs");
  if (value.is_zero()) {
    entries_.erase(i);
  } else {
    entries_.insert_or_assign(i, value);
  }
}

void FinVector::accumulate(Index i, const PadicScalar& value) {
  if (value.is_zero()) return;
  check_index(i);
  auto it = entries_.find(i);
  if (it == entries_.end()) {
    entries_.emplace(i, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) entries_.erase(it);
}

std::string FinVector::str() const {
  if (entries_.empty()) return "0";
  std::string s;
  for (const auto& [i, v] : entries_) {
    if (!s.empty()) s += ' ';
    s += std::to_string(i) + ":" + v.str();
  }
  return s;
}

NormExp sup_norm(const FinVector& x) {
  NormExp best = NormExp::zero();
  for (const auto& [i, v] : x.entries()) best = max(best, v.norm());
  return best;
}

namespace {

void check_compatible(const FinVector& x, const FinVector& y) {
  if (x.domain() != y.domain()) throw Error(ErrorCode::DomainMismatch, "vectors over different index domains");
  if (!(x.field() == y.field())) throw Error(ErrorCode::FieldMismatch, "vectors over different fields");
}

}  // namespace

FinVector vec_add(const FinVector& x, const FinVector& y) {
  check_compatible(x, y);
  FinVector r = x;
  for (const auto& [i, v] : y.entries()) r.accumulate(i, v);
  return r;
}

FinVector vec_sub(const FinVector& x, const FinVector& y) {
  check_compatible(x, y);
  FinVector r = x;
  for (const auto& [i, v] : y.entries()) r.accumulate(i, -v);
  return r;
}

FinVector vec_scale(const PadicScalar& lambda, const FinVector& x) {
  FinVector r(x.field(), x.domain());
  if (lambda.is_zero()) return r;
  for (const auto& [i, v] : x.entries()) r.set(i, lambda * v);
  return r;
}

FinVector basis(FieldConfig field, Index n, IndexDomain domain) {
  return FinVector::basis(field, n, domain);
}

NormExp dist(const FinVector& x, const FinVector& y) { return sup_norm(vec_sub(x, y)); }

Ball::Ball(FinVector c, NormExp r, bool is_closed)
    : center(std::move(c)), radius(r), closed(is_closed) {
  if (radius.is_zero()) throw Error(ErrorCode::OutOfRange, "ball radius must be nonzero");
}

std::string Ball::str() const {
  return std::string(closed ? "B[" : "B(") + center.str() + "; " + radius.str() + (closed ? "]" : ")");
}

bool ball_contains(const Ball& b, const FinVector& x) { return b.admits(dist(b.center, x)); }

}  // namespace padyn
