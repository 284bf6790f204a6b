#include "oracle.hpp"

namespace padyn::oracle {

std::int64_t val(const mpz_class& n, unsigned p) {
  if (n == 0) return kInf;
  mpz_class m = abs(n);
  std::int64_t v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

std::int64_t val(const Q& q, unsigned p) {
  if (q == 0) return kInf;
  return val(q.get_num(), p) - val(q.get_den(), p);
}

std::optional<std::int64_t> norm_exp(const QVec& x, unsigned p) {
  std::optional<std::int64_t> best;
  for (const auto& [i, v] : x) {
    if (v == 0) continue;
    const std::int64_t e = -val(v, p);
    if (!best || e > *best) best = e;
  }
  return best;
}

const Q& QSeq::at(std::uint64_t pos) const {
  if (pos < prefix.size()) return prefix[pos];
  return period[(pos - prefix.size()) % period.size()];
}

const Q& QWeights::at(std::int64_t n) const {
  if (n >= 1) return forward.at(static_cast<std::uint64_t>(n - 1));
  return backward->at(static_cast<std::uint64_t>(-n));
}

namespace {

void add(QVec& x, std::int64_t i, const Q& v) {
  if (v == 0) return;
  Q& slot = x[i];
  slot += v;
  if (slot == 0) x.erase(i);
}

}  // namespace

QVec step(const QOp& op, const QVec& x, std::int64_t window_hi) {
  QVec r;
  switch (op.kind) {
    case Kind::Identity:
      return x;
    case Kind::Scalar:
      for (const auto& [i, v] : x) add(r, i, op.lambda * v);
      return r;
    case Kind::BilateralBackward:
      for (const auto& [i, v] : x) add(r, i - 1, op.weights.at(i) * v);
      return r;
    case Kind::UnilateralBackward:
      for (const auto& [i, v] : x) {
        if (i >= 2) add(r, i - 1, op.weights.at(i - 1) * v);
      }
      return r;
    case Kind::Forward:
      for (const auto& [i, v] : x) add(r, i + 1, v / op.weights.at(i));
      return r;
    case Kind::ForwardBilateral:
      for (const auto& [i, v] : x) add(r, i + 1, v / op.weights.at(i + 1));
      return r;
    case Kind::LambdaMu:
      for (const auto& [i, v] : x) {
        add(r, i, op.lambda * v);
        if (op.integers || i >= 2) add(r, i - 1, op.mu * v);
      }
      return r;
    case Kind::RightInverse: {
      if (x.empty()) return r;
      // (Sx)_{i+1} = -(lambda/mu)(Sx)_i + x_i/mu, zero up to the first support index.
      const Q rho = -op.lambda / op.mu;
      Q cur = 0;
      for (std::int64_t i = x.begin()->first; i < window_hi; ++i) {
        auto it = x.find(i);
        cur = rho * cur + (it == x.end() ? Q(0) : it->second / op.mu);
        add(r, i + 1, cur);
      }
      return r;
    }
  }
  return r;
}

QVec iterate(const QOp& op, std::int64_t n, QVec x, std::int64_t window_hi) {
  for (std::int64_t k = 0; k < n; ++k) x = step(op, x, window_hi);
  return x;
}

Q lambda_mu_power_coordinate(const Q& lambda, const Q& mu, std::int64_t n, const QVec& x, std::int64_t i) {
  Q acc = 0;
  for (std::int64_t j = 0; j <= n; ++j) {
    auto it = x.find(i + j);
    if (it == x.end()) continue;
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
    Q lp = 1;
    Q mp = 1;
    for (std::int64_t t = 0; t < n - j; ++t) lp *= lambda;
    for (std::int64_t t = 0; t < j; ++t) mp *= mu;
    acc += Q(c) * lp * mp * it->second;
  }
  return acc;
}

QVec from_lib(const FinVector& x) {
  QVec r;
  for (const auto& [i, v] : x.entries()) r.emplace(i, v.to_rational());
  return r;
}

Q from_lib(const PadicScalar& s) { return s.to_rational(); }

PadicScalar to_lib(const FieldConfig& f, const Q& q) {
  return PadicScalar::from_rational(f, q.get_num(), q.get_den());
}

FinVector to_lib(const FieldConfig& f, IndexDomain d, const QVec& x) {
  FinVector r(f, d);
  for (const auto& [i, v] : x) r.set(i, to_lib(f, v));
  return r;
}

namespace {

PeriodicSequence to_lib_seq(const FieldConfig& f, const QSeq& s) {
  std::vector<PadicScalar> pre, per;
  for (const auto& q : s.prefix) pre.push_back(to_lib(f, q));
  for (const auto& q : s.period) per.push_back(to_lib(f, q));
  return PeriodicSequence(std::move(pre), std::move(per));
}

}  // namespace

WeightModel to_lib(const FieldConfig& f, const QWeights& w) {
  if (!w.backward) return WeightModel::unilateral(to_lib_seq(f, w.forward));
  return WeightModel::bilateral(to_lib_seq(f, w.forward), to_lib_seq(f, *w.backward));
}

OperatorSpec to_lib(const FieldConfig& f, const QOp& op) {
  const IndexDomain d = op.integers ? IndexDomain::Integers : IndexDomain::Naturals;
  switch (op.kind) {
    case Kind::Identity: return Identity{};
    case Kind::Scalar: return ScalarMul{to_lib(f, op.lambda)};
    case Kind::BilateralBackward: return BilateralBackwardShift(to_lib(f, op.weights));
    case Kind::UnilateralBackward: return UnilateralBackwardShift(to_lib(f, op.weights));
    case Kind::Forward: return ForwardShift(to_lib(f, op.weights));
    case Kind::ForwardBilateral: return ForwardShiftBilateral(to_lib(f, op.weights));
    case Kind::LambdaMu: return LambdaMu(to_lib(f, op.lambda), to_lib(f, op.mu), d);
    case Kind::RightInverse: return RightInverseLambdaMu(to_lib(f, op.lambda), to_lib(f, op.mu), d);
  }
  return Identity{};
}

}  // namespace padyn::oracle
