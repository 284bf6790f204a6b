#include "padyn/ops.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace padyn {

// -------------------------------------------------------- PeriodicSequence

namespace {

PadicScalar product_of(const std::vector<PadicScalar>& xs, const FieldConfig& field) {
  PadicScalar r = PadicScalar::one(field);
  for (const auto& x : xs) r *= x;
  return r;
}

}  // namespace

PeriodicSequence::PeriodicSequence(std::vector<PadicScalar> prefix, std::vector<PadicScalar> period)
    : prefix_(std::move(prefix)),
      period_(std::move(period)),
      period_product_(period_.empty() ? PadicScalar(FieldConfig(2)) : product_of(period_, period_.front().field())) {
  if (period_.empty()) throw Error(ErrorCode::ParameterViolation, "weight period must be nonempty");
  const FieldConfig& f = period_.front().field();
  for (const auto* list : {&prefix_, &period_}) {
    for (const auto& w : *list) {
      if (!(w.field() == f)) throw Error(ErrorCode::FieldMismatch, "weights over different fields");
      if (w.is_zero()) throw Error(ErrorCode::ParameterViolation, "zero weight");
    }
  }
}

const PadicScalar& PeriodicSequence::at(std::uint64_t pos) const {
  if (pos < prefix_.size()) return prefix_[pos];
  return period_[(pos - prefix_.size()) % period_.size()];
}

PadicScalar PeriodicSequence::product(std::uint64_t from, std::uint64_t to) const {
  PadicScalar r = PadicScalar::one(field());
  std::uint64_t pos = from;
  const std::uint64_t p = prefix_.size();
  const std::uint64_t len = period_.size();
  for (; pos < to && pos < p; ++pos) r *= prefix_[pos];
  if (pos >= to) return r;
  std::uint64_t off = pos - p;
  const std::uint64_t end = to - p;
  for (; off < end && off % len != 0; ++off) r *= period_[off % len];
  const std::uint64_t full = (end - off) / len;
  if (full > 0) {
    r *= period_product_.pow(static_cast<std::int64_t>(full));
    off += full * len;
  }
  for (; off < end; ++off) r *= period_[off % len];
  return r;
}

NormExp PeriodicSequence::max_norm() const {
  NormExp best = period_.front().norm();
  for (const auto* list : {&prefix_, &period_}) {
    for (const auto& w : *list) best = max(best, w.norm());
  }
  return best;
}

NormExp PeriodicSequence::min_norm() const {
  NormExp best = period_.front().norm();
  for (const auto* list : {&prefix_, &period_}) {
    for (const auto& w : *list) best = std::min(best, w.norm());
  }
  return best;
}

// ------------------------------------------------------------- WeightModel

WeightModel::WeightModel(IndexDomain domain, PeriodicSequence forward, std::optional<PeriodicSequence> backward)
    : domain_(domain), forward_(std::move(forward)), backward_(std::move(backward)) {
  if (backward_ && !(backward_->field() == forward_.field())) {
    throw Error(ErrorCode::FieldMismatch, "forward and backward weights over different fields");
  }
}

WeightModel WeightModel::unilateral(PeriodicSequence forward) {
  return WeightModel(IndexDomain::Naturals, std::move(forward), std::nullopt);
}

WeightModel WeightModel::bilateral(PeriodicSequence forward, PeriodicSequence backward) {
  return WeightModel(IndexDomain::Integers, std::move(forward), std::move(backward));
}

WeightModel WeightModel::constant(IndexDomain domain, const PadicScalar& c) {
  PeriodicSequence seq({}, {c});
  if (domain == IndexDomain::Naturals) return unilateral(seq);
  return bilateral(seq, seq);
}

namespace {

std::vector<PadicScalar> powers_of_p(const FieldConfig& field, const std::vector<std::int64_t>& vals) {
  std::vector<PadicScalar> out;
  out.reserve(vals.size());
  for (auto v : vals) out.push_back(PadicScalar::power_of_p(field, v));
  return out;
}

}  // namespace

WeightModel WeightModel::from_valuations(FieldConfig field, IndexDomain domain,
                                         const std::vector<std::int64_t>& forward_prefix,
                                         const std::vector<std::int64_t>& forward_period,
                                         const std::vector<std::int64_t>& backward_prefix,
                                         const std::vector<std::int64_t>& backward_period) {
  PeriodicSequence fwd(powers_of_p(field, forward_prefix), powers_of_p(field, forward_period));
  if (domain == IndexDomain::Naturals) return unilateral(std::move(fwd));
  return bilateral(std::move(fwd), PeriodicSequence(powers_of_p(field, backward_prefix),
                                                    powers_of_p(field, backward_period)));
}

PadicScalar WeightModel::weight_at(Index n) const {
  if (!in_domain(n, domain_)) {
    throw Error(ErrorCode::IndexOutOfDomain, "weight index " + std::to_string(n) + " outside N");
  }
  if (n >= 1) return forward_.at(static_cast<std::uint64_t>(n - 1));
  return backward_->at(static_cast<std::uint64_t>(-n));
}

PadicScalar WeightModel::product(Index from, Index to) const {
  PadicScalar r = PadicScalar::one(field());
  if (from > to) return r;
  if (!in_domain(from, domain_)) {
    throw Error(ErrorCode::IndexOutOfDomain, "weight index " + std::to_string(from) + " outside N");
  }
  // a_n for n <= 0 lives at backward position -n.
  if (from <= 0) {
    const Index hi = std::min<Index>(to, 0);
    r *= backward_->product(static_cast<std::uint64_t>(-hi), static_cast<std::uint64_t>(-from + 1));
  }
  if (to >= 1) {
    const Index lo = std::max<Index>(from, 1);
    r *= forward_.product(static_cast<std::uint64_t>(lo - 1), static_cast<std::uint64_t>(to));
  }
  return r;
}

NormExp WeightModel::sup_norm() const {
  NormExp best = forward_.max_norm();
  if (backward_) best = max(best, backward_->max_norm());
  return best;
}

NormExp WeightModel::inf_norm() const {
  NormExp best = forward_.min_norm();
  if (backward_) best = std::min(best, backward_->min_norm());
  return best;
}

namespace {

PeriodicSequence scale_seq(const PeriodicSequence& s, const PadicScalar& c) {
  std::vector<PadicScalar> pre, per;
  for (const auto& w : s.prefix()) pre.push_back(w * c);
  for (const auto& w : s.period()) per.push_back(w * c);
  return PeriodicSequence(std::move(pre), std::move(per));
}

// Aligns two periodic sequences on a common prefix length and lcm period.
PeriodicSequence sum_seq(const PeriodicSequence& a, const PeriodicSequence& b) {
  const std::size_t p = std::max(a.prefix().size(), b.prefix().size());
  const std::size_t len = std::lcm(a.period().size(), b.period().size());
  std::vector<PadicScalar> pre, per;
  for (std::size_t pos = 0; pos < p + len; ++pos) {
    PadicScalar s = a.at(pos) + b.at(pos);
    if (s.is_zero()) {
      throw Error(ErrorCode::ParameterViolation, "weight sum vanishes at position " + std::to_string(pos));
    }
    (pos < p ? pre : per).push_back(std::move(s));
  }
  return PeriodicSequence(std::move(pre), std::move(per));
}

}  // namespace

WeightModel WeightModel::scaled(const PadicScalar& c) const {
  if (c.is_zero()) throw Error(ErrorCode::ParameterViolation, "zero weight");
  if (!backward_) return unilateral(scale_seq(forward_, c));
  return bilateral(scale_seq(forward_, c), scale_seq(*backward_, c));
}

PadicScalar weight_at(const WeightModel& w, Index n) { return w.weight_at(n); }

WeightModel weight_sum(const WeightModel& a, const WeightModel& b) {
  if (a.domain() != b.domain()) throw Error(ErrorCode::DomainMismatch, "weight models over different domains");
  if (a.domain() == IndexDomain::Naturals) return WeightModel::unilateral(sum_seq(a.forward(), b.forward()));
  return WeightModel::bilateral(sum_seq(a.forward(), b.forward()), sum_seq(*a.backward(), *b.backward()));
}

// ---------------------------------------------------------- operator kinds

namespace {

void require_domain(const WeightModel& w, IndexDomain d, const char* what) {
  if (w.domain() != d) {
    throw Error(ErrorCode::WrongDomain, std::string(what) + " needs weights over " + std::string(to_string(d)));
  }
}

}  // namespace

BilateralBackwardShift::BilateralBackwardShift(WeightModel w) : weights(std::move(w)) {
  require_domain(weights, IndexDomain::Integers, "bilateral backward shift");
}

UnilateralBackwardShift::UnilateralBackwardShift(WeightModel w) : weights(std::move(w)) {
  require_domain(weights, IndexDomain::Naturals, "unilateral backward shift");
}

ForwardShift::ForwardShift(WeightModel w) : weights(std::move(w)) {
  require_domain(weights, IndexDomain::Naturals, "forward shift");
}

ForwardShiftBilateral::ForwardShiftBilateral(WeightModel w) : weights(std::move(w)) {
  require_domain(weights, IndexDomain::Integers, "bilateral forward shift");
}

LambdaMu::LambdaMu(PadicScalar l, PadicScalar m, IndexDomain d) : lambda(std::move(l)), mu(std::move(m)), domain(d) {
  if (!(lambda.field() == mu.field())) throw Error(ErrorCode::FieldMismatch, "lambda and mu over different fields");
}

RightInverseLambdaMu::RightInverseLambdaMu(PadicScalar l, PadicScalar m, IndexDomain d)
    : lambda(std::move(l)), mu(std::move(m)), domain(d) {
  if (!(lambda.field() == mu.field())) throw Error(ErrorCode::FieldMismatch, "lambda and mu over different fields");
  if (mu.is_zero()) throw Error(ErrorCode::DivisionByZero, "right inverse needs mu != 0");
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

std::optional<IndexDomain> operator_domain(const OperatorSpec& op) {
  return std::visit(
      Overloaded{
          [](const Identity&) -> std::optional<IndexDomain> { return std::nullopt; },
          [](const ScalarMul&) -> std::optional<IndexDomain> { return std::nullopt; },
          [](const BilateralBackwardShift&) -> std::optional<IndexDomain> { return IndexDomain::Integers; },
          [](const UnilateralBackwardShift&) -> std::optional<IndexDomain> { return IndexDomain::Naturals; },
          [](const ForwardShift&) -> std::optional<IndexDomain> { return IndexDomain::Naturals; },
          [](const ForwardShiftBilateral&) -> std::optional<IndexDomain> { return IndexDomain::Integers; },
          [](const LambdaMu& t) -> std::optional<IndexDomain> { return t.domain; },
          [](const RightInverseLambdaMu& t) -> std::optional<IndexDomain> { return t.domain; },
      },
      op);
}

namespace {

std::string seq_str(const PeriodicSequence& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.prefix().size(); ++i) out += (i ? " " : "") + s.prefix()[i].str();
  out += " | ";
  for (std::size_t i = 0; i < s.period().size(); ++i) out += (i ? " " : "") + s.period()[i].str();
  return out + "]";
}

std::string weights_str(const WeightModel& w) {
  std::string s = "forward " + seq_str(w.forward());
  if (w.backward()) s += " backward " + seq_str(*w.backward());
  return s;
}

}  // namespace

std::string describe(const OperatorSpec& op) {
  return std::visit(
      Overloaded{
          [](const Identity&) { return std::string("identity"); },
          [](const ScalarMul& t) { return "scalar " + t.lambda.str(); },
          [](const BilateralBackwardShift& t) { return "bilateral backward shift, " + weights_str(t.weights); },
          [](const UnilateralBackwardShift& t) { return "unilateral backward shift, " + weights_str(t.weights); },
          [](const ForwardShift& t) { return "forward shift, " + weights_str(t.weights); },
          [](const ForwardShiftBilateral& t) { return "bilateral forward shift, " + weights_str(t.weights); },
          [](const LambdaMu& t) {
            return "lambda*I + mu*B on " + std::string(to_string(t.domain)) + ", lambda " + t.lambda.str() +
                   ", mu " + t.mu.str();
          },
          [](const RightInverseLambdaMu& t) {
            return "right inverse of lambda*I + mu*B on " + std::string(to_string(t.domain)) + ", lambda " +
                   t.lambda.str() + ", mu " + t.mu.str();
          },
      },
      op);
}

// ------------------------------------------------------------ application

namespace {

void check_domain(const OperatorSpec& op, IndexDomain d) {
  const auto od = operator_domain(op);
  if (od && *od != d) {
    throw Error(ErrorCode::DomainMismatch, "operator acts on " + std::string(to_string(*od)) +
                                               ", vector lives on " + std::string(to_string(d)));
  }
}

FinVector apply_fin(const OperatorSpec& op, const FinVector& x) {
  check_domain(op, x.domain());
  FinVector r(x.field(), x.domain());
  std::visit(
      Overloaded{
          [&](const Identity&) { r = x; },
          [&](const ScalarMul& t) { r = vec_scale(t.lambda, x); },
          [&](const BilateralBackwardShift& t) {
            for (const auto& [n, v] : x.entries()) r.accumulate(n - 1, t.weights.weight_at(n) * v);
          },
          [&](const UnilateralBackwardShift& t) {
            for (const auto& [n, v] : x.entries()) {
              if (n >= 2) r.accumulate(n - 1, t.weights.weight_at(n - 1) * v);
            }
          },
          [&](const ForwardShift& t) {
            for (const auto& [n, v] : x.entries()) r.accumulate(n + 1, v / t.weights.weight_at(n));
          },
          [&](const ForwardShiftBilateral& t) {
            for (const auto& [n, v] : x.entries()) r.accumulate(n + 1, v / t.weights.weight_at(n + 1));
          },
          [&](const LambdaMu& t) {
            for (const auto& [n, v] : x.entries()) {
              r.accumulate(n, t.lambda * v);
              if (in_domain(n - 1, x.domain())) r.accumulate(n - 1, t.mu * v);
            }
          },
          [&](const RightInverseLambdaMu& t) { r = right_inverse_apply(t.lambda, t.mu, TailedVector(x)).to_finite(); },
      },
      op);
  return r;
}

// C(n, j) lambda^{n-j} mu^j for j = 0..jmax, memoized lazily.
class BinomialRow {
 public:
  BinomialRow(const PadicScalar& lambda, const PadicScalar& mu, std::int64_t n) : lambda_(lambda), mu_(mu), n_(n) {}
  const PadicScalar& operator()(std::int64_t j) {
    auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
    PadicScalar c = binomial(n_, j, lambda_.field()) * lambda_.pow(n_ - j) * mu_.pow(j);
    return cache_.emplace(j, std::move(c)).first->second;
  }

 private:
  PadicScalar lambda_;
  PadicScalar mu_;
  std::int64_t n_;
  std::unordered_map<std::int64_t, PadicScalar> cache_;
};

// (T^n x)_i = sum_j C(n,j) lambda^{n-j} mu^j x_{i+j}.
FinVector lambda_mu_power(const LambdaMu& t, std::int64_t n, const FinVector& x) {
  FinVector r(x.field(), x.domain());
  if (x.is_zero()) return r;
  BinomialRow row(t.lambda, t.mu, n);
  const bool nat = x.domain() == IndexDomain::Naturals;
  for (const auto& [m, v] : x.entries()) {
    const std::int64_t jmax = nat ? std::min<std::int64_t>(n, m - 1) : n;
    for (std::int64_t j = 0; j <= jmax; ++j) {
      if (t.lambda.is_zero() && j != n) continue;
      if (t.mu.is_zero() && j != 0) break;
      r.accumulate(m - j, row(j) * v);
    }
  }
  return r;
}

// T^n applied to a pure tail ratio^i P(i), i >= s. On the tail the image is
// ratio^i P~(i) with c~_q = sum_{k>=q} c_k C(n, k-q) (mu r)^{k-q} (lambda + mu r)^{n-k+q};
// the indices s-n..s-1 receive the boundary contributions.
TailedVector lambda_mu_power_tail(const LambdaMu& t, std::int64_t n, const GeometricTail& tail, IndexDomain domain) {
  const FieldConfig& field = t.lambda.field();
  const PadicScalar a = t.mu * tail.ratio();
  const PadicScalar b = t.lambda + a;
  GeometricTail::Coefficients coeffs;
  for (const auto& [k, c] : tail.coefficients()) {
    const std::int64_t lo = b.is_zero() ? n : 0;
    for (std::int64_t d = lo; d <= std::min(n, k); ++d) {
      PadicScalar term = c * binomial(n, d, field) * a.pow(d) * b.pow(n - d);
      if (term.is_zero()) continue;
      auto it = coeffs.find(k - d);
      if (it == coeffs.end()) {
        coeffs.emplace(k - d, std::move(term));
      } else {
        it->second += term;
      }
    }
  }
  FinVector head(field, domain);
  const Index s = tail.start();
  const Index first_nonzero = s + tail.min_degree();
  BinomialRow row(t.lambda, t.mu, n);
  std::unordered_map<Index, PadicScalar> values;
  auto value = [&](Index m) -> const PadicScalar& {
    auto it = values.find(m);
    if (it != values.end()) return it->second;
    return values.emplace(m, tail.value(m)).first->second;
  };
  for (Index i = std::max(first_nonzero - n, s - n); i < s; ++i) {
    if (!in_domain(i, domain)) continue;
    PadicScalar acc = PadicScalar::zero(field);
    for (std::int64_t j = std::max<Index>(first_nonzero - i, 0); j <= n; ++j) {
      if (t.lambda.is_zero() && j != n) continue;
      if (t.mu.is_zero() && j != 0) break;
      acc += row(j) * value(i + j);
    }
    head.set(i, acc);
  }
  return TailedVector(std::move(head), GeometricTail(s, tail.ratio(), std::move(coeffs)));
}

FinVector shift_power(const OperatorSpec& op, std::int64_t n, const FinVector& x) {
  FinVector r(x.field(), x.domain());
  std::visit(
      Overloaded{
          [&](const BilateralBackwardShift& t) {
            for (const auto& [m, v] : x.entries()) r.accumulate(m - n, t.weights.product(m - n + 1, m) * v);
          },
          [&](const UnilateralBackwardShift& t) {
            for (const auto& [m, v] : x.entries()) {
              if (m - n >= 1) r.accumulate(m - n, t.weights.product(m - n, m - 1) * v);
            }
          },
          [&](const ForwardShift& t) {
            for (const auto& [m, v] : x.entries()) r.accumulate(m + n, v / t.weights.product(m, m + n - 1));
          },
          [&](const ForwardShiftBilateral& t) {
            for (const auto& [m, v] : x.entries()) r.accumulate(m + n, v / t.weights.product(m + 1, m + n));
          },
          [](const auto&) {},
      },
      op);
  return r;
}

void check_power(std::int64_t n) {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "negative operator power");
}

}  // namespace

FinVector apply(const OperatorSpec& op, const FinVector& x) { return apply_fin(op, x); }

TailedVector apply(const OperatorSpec& op, const TailedVector& x) {
  check_domain(op, x.domain());
  if (x.finitely_supported() && !std::holds_alternative<RightInverseLambdaMu>(op)) {
    return TailedVector(apply_fin(op, x.head()));
  }
  if (const auto* t = std::get_if<RightInverseLambdaMu>(&op)) return right_inverse_apply(t->lambda, t->mu, x);
  return apply_power(op, 1, x);
}

FinVector apply_power(const OperatorSpec& op, std::int64_t n, const FinVector& x) {
  check_power(n);
  check_domain(op, x.domain());
  if (n == 0) return x;
  return std::visit(
      Overloaded{
          [&](const Identity&) { return x; },
          [&](const ScalarMul& t) { return vec_scale(t.lambda.pow(n), x); },
          [&](const LambdaMu& t) { return lambda_mu_power(t, n, x); },
          [&](const RightInverseLambdaMu& t) { return right_inverse_power(t.lambda, t.mu, n, x).to_finite(); },
          [&](const auto&) { return shift_power(op, n, x); },
      },
      op);
}

TailedVector apply_power(const OperatorSpec& op, std::int64_t n, const TailedVector& x) {
  check_power(n);
  check_domain(op, x.domain());
  if (n == 0) return x;
  if (const auto* t = std::get_if<RightInverseLambdaMu>(&op)) {
    if (x.finitely_supported()) return right_inverse_power(t->lambda, t->mu, n, x.head());
    TailedVector r = x;
    for (std::int64_t i = 0; i < n; ++i) r = right_inverse_apply(t->lambda, t->mu, r);
    return r;
  }
  if (x.finitely_supported()) return TailedVector(apply_power(op, n, x.head()));
  return std::visit(
      Overloaded{
          [&](const Identity&) { return x; },
          [&](const ScalarMul& t) { return vec_scale(t.lambda.pow(n), x); },
          [&](const LambdaMu& t) {
            return vec_add(TailedVector(lambda_mu_power(t, n, x.head())),
                           lambda_mu_power_tail(t, n, *x.tail(), x.domain()));
          },
          [&](const auto&) -> TailedVector {
            throw Error(ErrorCode::Unsupported, describe(op) + " applied to an infinitely supported vector");
          },
      },
      op);
}

// ------------------------------------------------------------ right inverse

TailedVector right_inverse_apply(const PadicScalar& lambda, const PadicScalar& mu, const TailedVector& x) {
  if (mu.is_zero()) throw Error(ErrorCode::DivisionByZero, "right inverse needs mu != 0");
  const FieldConfig& field = x.field();
  const PadicScalar inv_mu = mu.inv();
  if (lambda.is_zero()) {
    FinVector head(field, x.domain());
    for (const auto& [i, v] : x.head().entries()) head.set(i + 1, v * inv_mu);
    if (!x.tail()) return TailedVector(std::move(head));
    const GeometricTail& t = *x.tail();
    const PadicScalar f = t.ratio().inv() * inv_mu;
    GeometricTail::Coefficients coeffs;
    for (const auto& [k, c] : t.coefficients()) coeffs.emplace(k, c * f);
    return TailedVector(std::move(head), GeometricTail(t.start() + 1, t.ratio(), std::move(coeffs)));
  }
  const PadicScalar rho = -lambda * inv_mu;
  if (x.tail() && !(x.tail()->ratio() == rho)) {
    throw Error(ErrorCode::Unsupported, "right inverse of a tail with a foreign ratio");
  }
  if (x.head().is_zero() && !x.tail()) return x;
  const Index s = x.tail() ? x.tail()->start() : x.head().max_index() + 1;
  const Index i0 = x.head().is_zero() ? s : x.head().min_index();
  FinVector head(field, x.domain());
  PadicScalar cur = PadicScalar::zero(field);  // (Sx)_i, zero for i <= i0
  for (Index i = i0; i < s; ++i) {
    cur = rho * cur + x.head().at(i) * inv_mu;
    if (i + 1 < s) head.set(i + 1, cur);
  }
  // (Sx)_i = rho^i (w_s + sum_k (c_k / (mu rho)) C(i - s, k + 1)) for i >= s.
  GeometricTail::Coefficients coeffs;
  coeffs.emplace(0, cur / rho.pow(s));
  if (x.tail()) {
    const PadicScalar f = (mu * rho).inv();
    for (const auto& [k, c] : x.tail()->coefficients()) coeffs.emplace(k + 1, c * f);
  }
  return TailedVector(std::move(head), GeometricTail(s, rho, std::move(coeffs)));
}

// (S^n x)_i = mu^{-n} sum_{i-m >= n} C(i-m-1, n-1) rho^{i-m-n} x_m.
TailedVector right_inverse_power(const PadicScalar& lambda, const PadicScalar& mu, std::int64_t n,
                                 const FinVector& x) {
  check_power(n);
  if (mu.is_zero()) throw Error(ErrorCode::DivisionByZero, "right inverse needs mu != 0");
  if (n == 0 || x.is_zero()) return TailedVector(x);
  const FieldConfig& field = x.field();
  const PadicScalar mu_n = mu.pow(-n);
  FinVector head(field, x.domain());
  if (lambda.is_zero()) {
    for (const auto& [m, v] : x.entries()) head.set(m + n, v * mu_n);
    return TailedVector(std::move(head));
  }
  const PadicScalar rho = -lambda / mu;
  const Index lo = x.min_index();
  const Index hi = x.max_index();
  for (Index i = lo + n; i <= hi; ++i) {
    PadicScalar acc = PadicScalar::zero(field);
    for (const auto& [m, v] : x.entries()) {
      if (i - m < n) break;
      acc += binomial(i - m - 1, n - 1, field) * rho.pow(i - m - n) * v;
    }
    head.set(i, acc * mu_n);
  }
  // Tail from s = hi + 1: C(i-m-1, n-1) = sum_j C(hi-m, n-1-j) C(i-s, j).
  const Index s = hi + 1;
  const PadicScalar scale = mu_n * rho.pow(-n);
  GeometricTail::Coefficients coeffs;
  for (const auto& [m, v] : x.entries()) {
    const PadicScalar base = scale * rho.pow(-m) * v;
    for (std::int64_t j = std::max<std::int64_t>(0, n - 1 - (hi - m)); j <= n - 1; ++j) {
      PadicScalar term = base * binomial(hi - m, n - 1 - j, field);
      auto it = coeffs.find(j);
      if (it == coeffs.end()) {
        coeffs.emplace(j, std::move(term));
      } else {
        it->second += term;
      }
    }
  }
  return TailedVector(std::move(head), GeometricTail(s, rho, std::move(coeffs)));
}

// --------------------------------------------------------- norms, inverses

PadicScalar conjugated_weight(const WeightModel& a, Index n) {
  if (n == 0) return PadicScalar::one(a.field());
  if (n > 0) return a.product(1, n).inv();
  if (a.domain() != IndexDomain::Integers) {
    throw Error(ErrorCode::IndexOutOfDomain, "negative conjugated weight index needs a bilateral model");
  }
  return a.product(n + 1, 0);
}

NormExp operator_norm(const OperatorSpec& op) {
  return std::visit(
      Overloaded{
          [](const Identity&) { return NormExp::one(); },
          [](const ScalarMul& t) { return t.lambda.norm(); },
          [](const BilateralBackwardShift& t) { return t.weights.sup_norm(); },
          [](const UnilateralBackwardShift& t) { return t.weights.sup_norm(); },
          [](const ForwardShift& t) { return NormExp::one() / t.weights.inf_norm(); },
          [](const ForwardShiftBilateral& t) { return NormExp::one() / t.weights.inf_norm(); },
          [](const LambdaMu& t) { return max(t.lambda.norm(), t.mu.norm()); },
          [](const RightInverseLambdaMu& t) {
            if (!t.lambda.is_zero() && t.lambda.norm() > t.mu.norm()) {
              throw Error(ErrorCode::Unsupported, "right inverse with |lambda| > |mu| is unbounded");
            }
            return NormExp::one() / t.mu.norm();
          },
      },
      op);
}

OperatorSpec right_inverse_of(const OperatorSpec& op) {
  return std::visit(
      Overloaded{
          [](const Identity&) -> OperatorSpec { return Identity{}; },
          [](const ScalarMul& t) -> OperatorSpec {
            if (t.lambda.is_zero()) throw Error(ErrorCode::Unsupported, "zero operator has no right inverse");
            return ScalarMul{t.lambda.inv()};
          },
          [](const BilateralBackwardShift& t) -> OperatorSpec { return ForwardShiftBilateral(t.weights); },
          [](const UnilateralBackwardShift& t) -> OperatorSpec { return ForwardShift(t.weights); },
          [](const LambdaMu& t) -> OperatorSpec {
            if (t.mu.is_zero()) {
              throw Error(ErrorCode::Unsupported, "no constructed right inverse for " + describe(LambdaMu(t)));
            }
            return RightInverseLambdaMu(t.lambda, t.mu, t.domain);
          },
          [&op](const auto&) -> OperatorSpec {
            throw Error(ErrorCode::Unsupported, "no constructed right inverse for " + describe(op));
          },
      },
      op);
}

}  // namespace padyn
