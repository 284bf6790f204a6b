#include "padyn/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "padyn/criteria.hpp"
#include "padyn/dynamics.hpp"

namespace padyn {

namespace {

using oracle::Q;
using oracle::QOp;
using oracle::QSeq;
using oracle::QVec;
using oracle::QWeights;
using Rng = std::mt19937_64;

// Sample sizes and thresholds. Every number the suite relies on lives here.
constexpr std::int64_t kFieldPairsPerPrime = 10000;
constexpr std::int64_t kPowerCasesPerKind = 25;
constexpr std::int64_t kPowerMaxN = 30;
constexpr std::int64_t kPowerMaxSupport = 20;
constexpr std::int64_t kRightInverseCases = 500;
constexpr std::int64_t kRightInverseSupportHi = 50;
constexpr std::int64_t kRightInverseWindow = 60;
constexpr std::int64_t kScanModels = 120;
constexpr std::int64_t kScanZeroMeanModels = 20;
constexpr std::int64_t kScanLength = 100000;
constexpr std::int64_t kScanThreshold = 200;
constexpr std::int64_t kGridLo = -3;
constexpr std::int64_t kGridHi = 3;
constexpr std::int64_t kGridDepth = 40;
constexpr std::int64_t kGridBasis = 20;
constexpr std::int64_t kGridThresholds = 20;
constexpr std::int64_t kBallPairs = 50;
constexpr std::int64_t kBallMinRadius = -6;
constexpr std::int64_t kBallMaxSupport = 5;
constexpr std::int64_t kWitnessNMax = 1000;
constexpr std::int64_t kObstructionVectors = 50;
constexpr std::int64_t kObstructionNMax = 100;
constexpr std::int64_t kScalingSets = 5;
constexpr std::int64_t kScalingPairs = 60;
constexpr std::int64_t kScalingThresholds = 10;
constexpr std::int64_t kMetaModels = 100;

// Collects checks; keeps the first failure message.
struct Tally {
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string first;

  template <class F>
  void expect(bool ok, F&& describe) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = describe();
  }
  bool ok() const { return failures == 0; }
  std::string summary(const std::string& what) const {
    if (ok()) return what + ", " + std::to_string(checks) + " checks";
    return std::to_string(failures) + " of " + std::to_string(checks) + " checks failed; first: " + first;
  }
};

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

Q pow_p(unsigned p, std::int64_t v) {
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), p, static_cast<unsigned long>(v < 0 ? -v : v));
  return v < 0 ? Q(mpz_class(1), m) : Q(m);
}

Q unit(Rng& rng, unsigned p, std::int64_t max_digit = 999) {
  std::int64_t a = 0;
  std::int64_t b = 0;
  do a = uniform(rng, 1, max_digit);
  while (a % p == 0);
  do b = uniform(rng, 1, max_digit);
  while (b % p == 0);
  Q q(a, b);
  q.canonicalize();
  return (rng() & 1U) ? Q(-q) : q;
}

Q scalar(Rng& rng, unsigned p, std::int64_t vlo, std::int64_t vhi, std::int64_t max_digit = 999) {
  return unit(rng, p, max_digit) * pow_p(p, uniform(rng, vlo, vhi));
}

QVec vector(Rng& rng, unsigned p, std::int64_t lo, std::int64_t hi, std::int64_t max_support, std::int64_t vlo,
            std::int64_t vhi, std::int64_t max_digit = 999) {
  const std::int64_t size = uniform(rng, 1, std::min(max_support, hi - lo + 1));
  QVec x;
  while (static_cast<std::int64_t>(x.size()) < size) x[uniform(rng, lo, hi)] = scalar(rng, p, vlo, vhi, max_digit);
  return x;
}

QSeq sequence(Rng& rng, unsigned p, std::int64_t max_prefix, std::int64_t max_period, std::int64_t vlo,
              std::int64_t vhi) {
  QSeq s;
  const std::int64_t pre = uniform(rng, 0, max_prefix);
  const std::int64_t per = uniform(rng, 1, max_period);
  for (std::int64_t i = 0; i < pre; ++i) s.prefix.push_back(scalar(rng, p, vlo, vhi));
  for (std::int64_t i = 0; i < per; ++i) s.period.push_back(scalar(rng, p, vlo, vhi));
  return s;
}

std::string qstr(const QVec& x) {
  std::ostringstream os;
  for (const auto& [i, v] : x) os << i << ':' << v.get_str() << ' ';
  return os.str();
}

IndexDomain dom(bool integers) { return integers ? IndexDomain::Integers : IndexDomain::Naturals; }

// ------------------------------------------------------------ 1 field laws

std::string field_laws(Rng& rng, bool& passed) {
  Tally t;
  std::int64_t strict_cases = 0;
  for (unsigned p : {2U, 5U, 7U}) {
    const FieldConfig f(p, 64);
    for (std::int64_t s = 0; s < kFieldPairsPerPrime; ++s) {
      const Q qa = uniform(rng, 0, 19) == 0 ? Q(0) : scalar(rng, p, -20, 20);
      const Q qb = uniform(rng, 0, 19) == 0 ? Q(0) : scalar(rng, p, -20, 20);
      const PadicScalar a = oracle::to_lib(f, qa);
      const PadicScalar b = oracle::to_lib(f, qb);
      const std::int64_t va = oracle::val(qa, p);
      const std::int64_t vb = oracle::val(qb, p);
      auto ctx = [&] { return "p=" + std::to_string(p) + " a=" + qa.get_str() + " b=" + qb.get_str(); };
      t.expect(a.to_rational() == qa && a.valuation() == va, [&] { return "round trip, " + ctx(); });

      const PadicScalar prod = a * b;
      const Q qp = qa * qb;
      t.expect(prod.to_rational() == qp, [&] { return "product value, " + ctx(); });
      t.expect(prod.norm() == a.norm() * b.norm(), [&] { return "|ab| != |a||b|, " + ctx(); });
      t.expect(prod.valuation() == oracle::val(qp, p), [&] { return "v(ab) disagrees with oracle, " + ctx(); });
      if (qa != 0 && qb != 0) {
        t.expect(oracle::val(qp, p) == va + vb, [&] { return "oracle v(ab) != v(a)+v(b), " + ctx(); });
      }

      const PadicScalar sum = a + b;
      const Q qs = qa + qb;
      const std::int64_t vs = oracle::val(qs, p);
      t.expect(sum.to_rational() == qs, [&] { return "sum value, " + ctx(); });
      t.expect(sum.valuation() == vs, [&] { return "v(a+b) disagrees with oracle, " + ctx(); });
      t.expect(sum.norm() <= max(a.norm(), b.norm()) && vs >= std::min(va, vb),
               [&] { return "strong triangle inequality, " + ctx(); });
      if (va != vb) {
        ++strict_cases;
        t.expect(sum.norm() == max(a.norm(), b.norm()) && vs == std::min(va, vb),
                 [&] { return "equality case, " + ctx(); });
      }
    }
  }
  passed = t.ok();
  return t.summary(std::to_string(3 * kFieldPairsPerPrime) + " pairs over p in {2,5,7}, " +
                   std::to_string(strict_cases) + " with unequal norms");
}

// ----------------------------------------------------------- 2 power oracle

struct KindCase {
  oracle::Kind kind;
  bool integers;
  const char* name;
};

constexpr KindCase kKinds[] = {
    {oracle::Kind::Identity, false, "identity"},
    {oracle::Kind::Scalar, true, "scalar"},
    {oracle::Kind::BilateralBackward, true, "bilateral-backward"},
    {oracle::Kind::UnilateralBackward, false, "unilateral-backward"},
    {oracle::Kind::Forward, false, "forward"},
    {oracle::Kind::ForwardBilateral, true, "forward-bilateral"},
    {oracle::Kind::LambdaMu, false, "lambda-mu-N"},
    {oracle::Kind::LambdaMu, true, "lambda-mu-Z"},
    {oracle::Kind::RightInverse, false, "right-inverse-N"},
    {oracle::Kind::RightInverse, true, "right-inverse-Z"},
};

std::string power_oracle(Rng& rng, bool& passed) {
  Tally t;
  std::int64_t cases = 0;
  const unsigned primes[] = {2, 5, 7};
  for (const KindCase& kc : kKinds) {
    for (std::int64_t c = 0; c < kPowerCasesPerKind; ++c, ++cases) {
      const unsigned p = primes[c % 3];
      const FieldConfig f(p, 64);
      QOp op{kc.kind, 0, 0, {}, kc.integers};
      op.weights.forward = sequence(rng, p, 3, 4, -2, 2);
      if (kc.integers) op.weights.backward = sequence(rng, p, 3, 4, -2, 2);
      op.lambda = uniform(rng, 0, 4) == 0 ? Q(0) : scalar(rng, p, -2, 2);
      op.mu = scalar(rng, p, -2, 2);
      if (kc.kind == oracle::Kind::Scalar) op.lambda = scalar(rng, p, -2, 2);
      if (kc.kind == oracle::Kind::LambdaMu && uniform(rng, 0, 9) == 0) op.mu = 0;
      const QVec qx = kc.integers ? vector(rng, p, -10, 10, kPowerMaxSupport, -3, 3)
                                  : vector(rng, p, 1, kPowerMaxSupport, kPowerMaxSupport, -3, 3);
      const std::int64_t n = uniform(rng, 0, kPowerMaxN);
      const OperatorSpec lib = oracle::to_lib(f, op);
      const FinVector x = oracle::to_lib(f, dom(kc.integers), qx);
      auto ctx = [&] { return std::string(kc.name) + " n=" + std::to_string(n) + " x=" + qstr(qx); };

      const TailedVector closed = apply_power(lib, n, TailedVector(x));
      TailedVector iterated(x);
      for (std::int64_t k = 0; k < n; ++k) iterated = padyn::apply(lib, iterated);
      t.expect(closed == iterated, [&] { return "closed form != iterated apply, " + ctx(); });

      if (kc.kind == oracle::Kind::RightInverse) {
        const std::int64_t hi = qx.rbegin()->first + n + 8;
        const QVec ref = oracle::iterate(op, n, qx, hi);
        bool same = true;
        for (std::int64_t i = qx.begin()->first; i <= hi && same; ++i) {
          const auto it = ref.find(i);
          same = closed.at(i).to_rational() == (it == ref.end() ? Q(0) : it->second);
        }
        t.expect(same, [&] { return "right inverse power disagrees with the rational recurrence, " + ctx(); });
        if (op.lambda == 0) {
          t.expect(closed.finitely_supported() && apply_power(lib, n, x) == closed.to_finite(),
                   [&] { return "lambda = 0 right inverse should stay finite, " + ctx(); });
        }
      } else {
        const QVec ref = oracle::iterate(op, n, qx, 0);
        t.expect(closed.finitely_supported() && oracle::from_lib(closed.to_finite()) == ref,
                 [&] { return "apply_power disagrees with the rational oracle, " + ctx(); });
        t.expect(apply_power(lib, n, x) == closed.to_finite(),
                 [&] { return "finite and tailed apply_power differ, " + ctx(); });
      }
    }
  }
  passed = t.ok();
  return t.summary(std::to_string(cases) + " cases over " + std::to_string(std::size(kKinds)) +
                   " operator kinds, n <= " + std::to_string(kPowerMaxN));
}

// ---------------------------------------------------------- 3 right inverse

std::string right_inverse(Rng& rng, bool& passed) {
  Tally t;
  const unsigned primes[] = {2, 5, 7};
  for (std::int64_t c = 0; c < kRightInverseCases; ++c) {
    const unsigned p = primes[c % 3];
    const FieldConfig f(p, 64);
    const Q ql = uniform(rng, 0, 5) == 0 ? Q(0) : scalar(rng, p, -3, 3);
    const Q qm = scalar(rng, p, -3, 3);
    const QVec qx = vector(rng, p, 1, kRightInverseSupportHi, 20, -3, 3);
    const PadicScalar lambda = oracle::to_lib(f, ql);
    const PadicScalar mu = oracle::to_lib(f, qm);
    const FinVector x = oracle::to_lib(f, IndexDomain::Naturals, qx);
    auto ctx = [&] { return "lambda=" + ql.get_str() + " mu=" + qm.get_str() + " x=" + qstr(qx); };

    const TailedVector sx = right_inverse_apply(lambda, mu, TailedVector(x));
    const TailedVector back = padyn::apply(LambdaMu(lambda, mu, IndexDomain::Naturals), sx);
    t.expect(back.finitely_supported() && back.to_finite() == x, [&] { return "T S x != x, " + ctx(); });
    t.expect(sx.at(1).is_zero(), [&] { return "(Sx)_1 != 0, " + ctx(); });

    const QOp s{oracle::Kind::RightInverse, ql, qm, {}, false};
    const QOp tt{oracle::Kind::LambdaMu, ql, qm, {}, false};
    const QVec ref = oracle::step(s, qx, kRightInverseWindow);
    bool same = true;
    for (std::int64_t i = 1; i <= kRightInverseWindow && same; ++i) {
      const auto it = ref.find(i);
      same = sx.at(i).to_rational() == (it == ref.end() ? Q(0) : it->second);
    }
    t.expect(same, [&] { return "S x disagrees with the rational recurrence, " + ctx(); });
    QVec round = oracle::step(tt, ref, 0);
    round.erase(round.lower_bound(kRightInverseWindow), round.end());
    t.expect(round == qx, [&] { return "rational oracle: T S x != x, " + ctx(); });
  }
  passed = t.ok();
  return t.summary(std::to_string(kRightInverseCases) + " vectors with support in [1," +
                   std::to_string(kRightInverseSupportHi) + "]");
}

// ---------------------------------------------------- 4 decider versus scan

struct Model {
  QWeights w;
  std::vector<std::int64_t> fv;  // oracle valuations of forward weights a_1..a_L
  std::vector<std::int64_t> bv;  // oracle valuations of a_0, a_{-1}, ...
};

std::vector<std::int64_t> valuations(const QSeq& s, unsigned p, std::int64_t len) {
  std::vector<std::int64_t> pre;
  std::vector<std::int64_t> per;
  for (const Q& q : s.prefix) pre.push_back(oracle::val(q, p));
  for (const Q& q : s.period) per.push_back(oracle::val(q, p));
  std::vector<std::int64_t> out(static_cast<std::size_t>(len));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = i < pre.size() ? pre[i] : per[(i - pre.size()) % per.size()];
  }
  return out;
}

Q period_mean(const QSeq& s, unsigned p) {
  Q sum = 0;
  for (const Q& q : s.period) sum += oracle::val(q, p);
  return sum / static_cast<long>(s.period.size());
}

QSeq zero_mean_sequence(Rng& rng, unsigned p) {
  QSeq s;
  const std::int64_t pre = uniform(rng, 0, 4);
  for (std::int64_t i = 0; i < pre; ++i) s.prefix.push_back(scalar(rng, p, -3, 3));
  const std::int64_t half = uniform(rng, 1, 4);
  std::vector<std::int64_t> vs;
  for (std::int64_t i = 0; i < half; ++i) {
    const std::int64_t v = uniform(rng, -3, 3);
    vs.push_back(v);
    vs.push_back(-v);
  }
  std::shuffle(vs.begin(), vs.end(), rng);
  for (std::int64_t v : vs) s.period.push_back(unit(rng, p) * pow_p(p, v));
  return s;
}

// prefix sums S[0..len] of valuations
std::vector<std::int64_t> partial_sums(const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> s(v.size() + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) s[i + 1] = s[i] + v[i];
  return s;
}

struct Scan {
  bool bilateral_hc = false;
  bool bilateral_sc = false;
  bool unilateral_hc = false;
  std::int64_t max_abs = 0;
};

// Threshold crossing over n in [N/2, N] for the shifts q in {-3, 0, 3}.
Scan scan(const Model& m) {
  constexpr std::int64_t kQ[] = {-3, 0, 3};
  const auto sp = partial_sums(m.fv);
  const auto sm = m.bv.empty() ? std::vector<std::int64_t>{} : partial_sums(m.bv);
  Scan r;
  for (std::int64_t v : sp) r.max_abs = std::max(r.max_abs, v < 0 ? -v : v);
  for (std::int64_t v : sm) r.max_abs = std::max(r.max_abs, v < 0 ? -v : v);
  for (std::int64_t n = kScanLength / 2; n <= kScanLength; ++n) {
    if (sp[static_cast<std::size_t>(n)] <= -kScanThreshold) r.unilateral_hc = true;
  }
  if (sm.empty()) return r;
  bool hc = true;
  bool sc = true;
  for (std::int64_t q : kQ) {
    bool hq = false;
    bool sq = false;
    for (std::int64_t n = kScanLength / 2; n <= kScanLength - 3; ++n) {
      const std::int64_t a = sp[static_cast<std::size_t>(n + q)];
      const std::int64_t b = sm[static_cast<std::size_t>(n - q)];
      if (a <= -kScanThreshold && b >= kScanThreshold) hq = true;
      if (a - b <= -kScanThreshold) sq = true;
    }
    hc = hc && hq;
    sc = sc && sq;
  }
  r.bilateral_hc = hc;
  r.bilateral_sc = sc;
  return r;
}

Model make_model(Rng& rng, unsigned p, bool bilateral, bool zero_mean) {
  for (;;) {
    Model m;
    m.w.forward = zero_mean ? zero_mean_sequence(rng, p) : sequence(rng, p, 4, 8, -3, 3);
    if (bilateral) m.w.backward = zero_mean ? zero_mean_sequence(rng, p) : sequence(rng, p, 4, 8, -3, 3);
    if (!zero_mean) {
      const Q mf = period_mean(m.w.forward, p);
      if (mf == 0) continue;
      if (bilateral) {
        const Q mb = period_mean(*m.w.backward, p);
        if (mb == 0 || mf == mb) continue;
      }
    }
    m.fv = valuations(m.w.forward, p, kScanLength + 4);
    if (bilateral) m.bv = valuations(*m.w.backward, p, kScanLength + 4);
    return m;
  }
}

std::string decider_scan(Rng& rng, bool& passed) {
  Tally t;
  const unsigned primes[] = {2, 3, 5};
  std::int64_t models = 0;
  std::int64_t yes = 0;
  for (std::int64_t c = 0; c < kScanModels + kScanZeroMeanModels; ++c) {
    const bool zero = c >= kScanModels;
    const unsigned p = primes[c % 3];
    const FieldConfig f(p, 64);
    for (bool bilateral : {true, false}) {
      ++models;
      const Model m = make_model(rng, p, bilateral, zero);
      const WeightModel w = oracle::to_lib(f, m.w);
      const Scan s = scan(m);
      auto ctx = [&] { return std::string(bilateral ? "bilateral" : "unilateral") + " model " + std::to_string(c); };
      if (zero) {
        t.expect(s.max_abs < kScanThreshold, [&] { return "zero-mean sums escaped the threshold, " + ctx(); });
      }
      if (bilateral) {
        const Verdict hc = decide_bilateral_hypercyclic(w);
        const Verdict sc = decide_bilateral_supercyclic(w);
        yes += hc.yes() + sc.yes();
        t.expect(hc.yes() == s.bilateral_hc, [&] { return "HHH verdict disagrees with scan, " + ctx(); });
        t.expect(sc.yes() == s.bilateral_sc, [&] { return "CCC verdict disagrees with scan, " + ctx(); });
      } else {
        const Verdict hc = decide_unilateral(w, Property::Hypercyclic);
        const Verdict sc = decide_unilateral(w, Property::Supercyclic);
        yes += hc.yes();
        t.expect(hc.yes() == s.unilateral_hc, [&] { return "UWHC verdict disagrees with scan, " + ctx(); });
        t.expect(sc.yes(), [&] { return "unilateral shift not decided supercyclic, " + ctx(); });
      }
    }
  }
  passed = t.ok();
  return t.summary(std::to_string(models) + " models (" + std::to_string(2 * kScanZeroMeanModels) +
                   " zero-mean), scan to n = " + std::to_string(kScanLength) + ", " + std::to_string(yes) +
                   " Yes verdicts");
}

// -------------------------------------------------------- 5 lambda-mu grid

bool grid_expected(std::int64_t vl, std::int64_t vm, bool integers, Property prop) {
  if (integers) return false;
  if (prop == Property::Hypercyclic) return vl > 0 && 0 > vm;
  return vl > vm;
}

std::string lambda_mu_grid(Rng& rng, bool& passed) {
  Tally t;
  const unsigned p = 5;
  const FieldConfig f(p, 64);
  const CriterionOptions opts{kGridBasis, kGridDepth, kGridThresholds};
  std::int64_t cells = 0;
  std::int64_t yes = 0;
  for (std::int64_t vl = kGridLo; vl <= kGridHi; ++vl) {
    for (std::int64_t vm = kGridLo; vm <= kGridHi; ++vm) {
      const PadicScalar lambda = oracle::to_lib(f, unit(rng, p, 9) * pow_p(p, vl));
      const PadicScalar mu = oracle::to_lib(f, unit(rng, p, 9) * pow_p(p, vm));
      for (bool integers : {false, true}) {
        const LambdaMu op(lambda, mu, dom(integers));
        const OperatorSpec inv = right_inverse_of(op);
        for (Property prop : {Property::Hypercyclic, Property::Supercyclic}) {
          ++cells;
          const bool expected = grid_expected(vl, vm, integers, prop);
          yes += expected;
          auto ctx = [&] {
            return "v(lambda)=" + std::to_string(vl) + " v(mu)=" + std::to_string(vm) +
                   (integers ? " over Z " : " over N ") + std::string(to_string(prop));
          };
          const Verdict v = decide_lambda_mu(lambda, mu, dom(integers), prop);
          t.expect(v.yes() == expected, [&] { return "decider disagrees with the characterization, " + ctx(); });
          const SubsequenceCertificate seq = v.certificate.value_or(SubsequenceCertificate{});
          const CriterionReport r = prop == Property::Hypercyclic ? verify_hc_criterion(op, inv, seq, opts)
                                                                  : verify_sc_criterion(op, inv, seq, opts);
          t.expect(r.passed == expected, [&] {
            return std::string("criterion ") + (r.passed ? "passed" : "failed") + " against verdict, " + ctx();
          });
        }
      }
    }
  }
  passed = t.ok();
  return t.summary(std::to_string(cells) + " cells (" + std::to_string(yes) + " Yes), depth " +
                   std::to_string(kGridDepth) + ", basis " + std::to_string(kGridBasis));
}

// ------------------------------------------------------------ 6 transitivity

struct HcOperator {
  OperatorSpec op;
  std::string name;
  bool integers;
  std::optional<QOp> rational;  // finite-support oracle, when the orbit stays in c00
};

std::vector<HcOperator> hc_operators(Rng& rng) {
  const unsigned p = 5;
  const FieldConfig f(p, 64);
  std::vector<HcOperator> ops;
  for (std::int64_t vl = 1; vl <= kGridHi; ++vl) {
    for (std::int64_t vm = kGridLo; vm <= -1; ++vm) {
      const PadicScalar lambda = oracle::to_lib(f, unit(rng, p, 9) * pow_p(p, vl));
      const PadicScalar mu = oracle::to_lib(f, unit(rng, p, 9) * pow_p(p, vm));
      ops.push_back({LambdaMu(lambda, mu, IndexDomain::Naturals),
                     "lambda-mu v=(" + std::to_string(vl) + "," + std::to_string(vm) + ")", false, std::nullopt});
    }
  }
  QWeights uni;
  uni.forward.prefix = {unit(rng, p) * pow_p(p, 2)};
  uni.forward.period = {unit(rng, p) * pow_p(p, -2), unit(rng, p) * pow_p(p, 1)};
  ops.push_back({UnilateralBackwardShift(oracle::to_lib(f, uni)), "unilateral shift", false,
                 QOp{oracle::Kind::UnilateralBackward, 0, 0, uni, false}});
  QWeights bi;
  bi.forward.period = {unit(rng, p) * pow_p(p, -1)};
  bi.backward = QSeq{{unit(rng, p)}, {unit(rng, p) * pow_p(p, 1), unit(rng, p) * pow_p(p, 2)}};
  ops.push_back({BilateralBackwardShift(oracle::to_lib(f, bi)), "bilateral shift", true,
                 QOp{oracle::Kind::BilateralBackward, 0, 0, bi, true}});
  return ops;
}

std::string transitivity(Rng& rng, bool& passed) {
  Tally t;
  const unsigned p = 5;
  const FieldConfig f(p, 64);
  std::int64_t found = 0;
  std::int64_t max_n = 0;
  const auto ops = hc_operators(rng);
  for (const HcOperator& h : ops) {
    const Verdict v = decide(h.op, Property::Hypercyclic);
    t.expect(v.yes() && v.certificate.has_value(), [&] { return h.name + " is not decided hypercyclic"; });
    if (!v.yes() || !v.certificate) continue;
    const OperatorSpec inv = right_inverse_of(h.op);
    const std::int64_t lo = h.integers ? -5 : 1;
    const std::int64_t hi = h.integers ? 5 : 10;
    for (std::int64_t b = 0; b < kBallPairs; ++b) {
      const QVec qu = vector(rng, p, lo, hi, kBallMaxSupport, -3, 3);
      const QVec qv = vector(rng, p, lo, hi, kBallMaxSupport, -3, 3);
      const Ball u(oracle::to_lib(f, dom(h.integers), qu), NormExp::pow(uniform(rng, kBallMinRadius, 0)),
                   (rng() & 1U) != 0);
      const Ball vb(oracle::to_lib(f, dom(h.integers), qv), NormExp::pow(uniform(rng, kBallMinRadius, 0)),
                    (rng() & 1U) != 0);
      auto ctx = [&] { return h.name + " U=" + u.str() + " V=" + vb.str(); };
      const auto w = transitivity_witness(h.op, inv, u, vb, kWitnessNMax, *v.certificate);
      t.expect(w.has_value(), [&] { return "no witness with n <= " + std::to_string(kWitnessNMax) + ", " + ctx(); });
      if (!w) continue;
      ++found;
      max_n = std::max(max_n, w->n);
      // Recompute T^n z one step at a time.
      TailedVector image = w->z;
      for (std::int64_t k = 0; k < w->n; ++k) {
        image = image.finitely_supported() ? TailedVector(padyn::apply(h.op, image.to_finite())) : padyn::apply(h.op, image);
      }
      t.expect(image == w->image, [&] { return "iterated image differs from witness, " + ctx(); });
      t.expect(ball_contains(u, w->z) && ball_contains(vb, image),
               [&] { return "recomputed membership fails, " + ctx(); });
      if (h.rational && w->z.finitely_supported()) {
        const QVec qz = oracle::from_lib(w->z.to_finite());
        const QVec qi = oracle::iterate(*h.rational, w->n, qz, 0);
        QVec du = qz;
        for (const auto& [i, c] : qu) du[i] -= c;
        QVec dv = qi;
        for (const auto& [i, c] : qv) dv[i] -= c;
        auto inside = [&](const QVec& d, const Ball& ball) {
          const auto e = oracle::norm_exp(d, p);
          return ball.admits(e ? NormExp::pow(*e) : NormExp::zero());
        };
        t.expect(inside(du, u) && inside(dv, vb), [&] { return "rational oracle rejects membership, " + ctx(); });
      }
    }
  }
  passed = t.ok();
  return t.summary(std::to_string(found) + " witnesses over " + std::to_string(ops.size()) + " operators x " +
                   std::to_string(kBallPairs) + " ball pairs, largest n = " + std::to_string(max_n));
}

// ------------------------------------------------------------ 7 obstruction

std::string obstruction(Rng& rng, bool& passed) {
  Tally t;
  const unsigned p = 5;
  const FieldConfig f(p, 64);
  std::int64_t steps = 0;
  for (std::int64_t c = 0; c < kObstructionVectors; ++c) {
    const std::int64_t vm = uniform(rng, -2, 2);
    const std::int64_t vl = uniform(rng, -2, vm);  // |lambda| >= |mu|
    const Q ql = unit(rng, p, 9) * pow_p(p, vl);
    const Q qm = unit(rng, p, 9) * pow_p(p, vm);
    const QVec qx = vector(rng, p, -10, 10, 8, -3, 3, 9);
    auto ctx = [&] { return "lambda=" + ql.get_str() + " mu=" + qm.get_str() + " x=" + qstr(qx); };

    // Last index attaining the sup norm.
    const std::int64_t top = *oracle::norm_exp(qx, p);
    std::int64_t k = 0;
    for (const auto& [i, v] : qx) {
      if (-oracle::val(v, p) == top) k = i;
    }
    const std::int64_t vk = oracle::val(qx.at(k), p);

    const ObstructionWitness w = obstruction_witness_lambda_mu(
        oracle::to_lib(f, ql), oracle::to_lib(f, qm), oracle::to_lib(f, IndexDomain::Integers, qx), kObstructionNMax);
    t.expect(w.kase == ObstructionCase::LambdaDominates && w.critical_index == k && w.target_index == k + 1,
             [&] { return "critical index differs from oracle, " + ctx(); });
    t.expect(w.certified && !w.distance_bound.empty(), [&] { return "witness not certified, " + ctx(); });
    t.expect(static_cast<std::int64_t>(w.steps.size()) == kObstructionNMax + 1,
             [&] { return "wrong number of steps, " + ctx(); });

    const QOp op{oracle::Kind::LambdaMu, ql, qm, {}, true};
    QVec y = qx;
    for (std::int64_t n = 0; n <= kObstructionNMax && n < static_cast<std::int64_t>(w.steps.size()); ++n) {
      if (n > 0) y = oracle::step(op, y, 0);
      ++steps;
      const auto at = [&](std::int64_t i) {
        const auto it = y.find(i);
        return it == y.end() ? oracle::kInf : oracle::val(it->second, p);
      };
      const std::int64_t expected = n * vl + vk;
      const std::int64_t crit = at(k);
      const std::int64_t target = at(k + 1);
      t.expect(crit == expected, [&] { return "|x_k^(n)| != |lambda|^n |x_k| at n=" + std::to_string(n) + ", " + ctx(); });
      t.expect(target > expected, [&] { return "|x_{k+1}^(n)| not strictly smaller at n=" + std::to_string(n) + ", " + ctx(); });
      const ObstructionStep& s = w.steps[static_cast<std::size_t>(n)];
      const NormExp target_norm = target == oracle::kInf ? NormExp::zero() : NormExp::pow(-target);
      t.expect(s.critical == NormExp::pow(-crit) && s.target == target_norm && s.expected == NormExp::pow(-expected),
               [&] { return "witness norms differ from oracle at n=" + std::to_string(n) + ", " + ctx(); });
    }
  }
  passed = t.ok();
  return t.summary(std::to_string(kObstructionVectors) + " vectors, " + std::to_string(steps) +
                   " orbit steps with n <= " + std::to_string(kObstructionNMax));
}

// ------------------------------------------------------ 8 scaling sequence

std::int64_t floor_half(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

QVec vector_with_norm(Rng& rng, unsigned p, std::int64_t e) {
  QVec x = vector(rng, p, 1, 8, 4, -e, -e + 3);
  x.begin()->second = unit(rng, p) * pow_p(p, -e);
  return x;
}

std::string scaling(Rng& rng, bool& passed) {
  Tally t;
  const unsigned p = 5;
  const FieldConfig f(p, 64);
  std::int64_t worst_n = 0;
  for (std::int64_t set = 0; set < kScalingSets; ++set) {
    std::vector<std::pair<FinVector, FinVector>> pairs;
    std::vector<std::pair<QVec, QVec>> qpairs;
    for (std::int64_t n = 1; n <= kScalingPairs; ++n) {
      const std::int64_t ex = uniform(rng, -n - 3, 3);
      const std::int64_t ey = -n - ex;
      qpairs.emplace_back(vector_with_norm(rng, p, ex), vector_with_norm(rng, p, ey));
      pairs.emplace_back(oracle::to_lib(f, IndexDomain::Naturals, qpairs.back().first),
                         oracle::to_lib(f, IndexDomain::Naturals, qpairs.back().second));
    }
    const auto terms = scaling_sequence(pairs);
    t.expect(terms.size() == pairs.size(), [&] { return "wrong number of terms in set " + std::to_string(set); });
    std::vector<std::int64_t> top;  // exponent of max(|l x|, |l^-1 y|)
    for (std::size_t i = 0; i < terms.size() && i < qpairs.size(); ++i) {
      const ScalingTerm& s = terms[i];
      const std::int64_t ex = *oracle::norm_exp(qpairs[i].first, p);
      const std::int64_t ey = *oracle::norm_exp(qpairs[i].second, p);
      auto ctx = [&] { return "set " + std::to_string(set) + " n=" + std::to_string(i + 1); };
      t.expect(s.branch == ScalingBranch::BothNonzero, [&] { return "wrong branch, " + ctx(); });
      t.expect(s.scaled_x == NormExp::pow(ex - s.alpha) && s.scaled_y == NormExp::pow(ey + s.alpha),
               [&] { return "scaled norms differ from oracle, " + ctx(); });
      const std::int64_t m = std::max(ex - s.alpha, ey + s.alpha);
      t.expect(m <= floor_half(ex + ey) + 1, [&] { return "bound p (|x||y|)^(1/2) violated, " + ctx(); });
      top.push_back(m);
    }
    for (std::int64_t m = 1; m <= kScalingThresholds; ++m) {
      // N(m): first index after which every term is <= p^{-m}.
      std::int64_t n_m = static_cast<std::int64_t>(top.size()) + 1;
      for (std::int64_t i = static_cast<std::int64_t>(top.size()); i >= 1 && top[static_cast<std::size_t>(i - 1)] <= -m; --i) n_m = i;
      t.expect(n_m <= static_cast<std::int64_t>(top.size()),
               [&] { return "no N(" + std::to_string(m) + ") in set " + std::to_string(set); });
      worst_n = std::max(worst_n, n_m);
    }
  }
  passed = t.ok();
  return t.summary(std::to_string(kScalingSets) + " sets of " + std::to_string(kScalingPairs) +
                   " pairs with ||x_n|| ||y_n|| = p^-n, N(" + std::to_string(kScalingThresholds) + ") <= " +
                   std::to_string(worst_n));
}

// --------------------------------------------------------- 9 meta-checks

std::string meta_checks(Rng& rng, bool& passed) {
  Tally t;
  const unsigned p = 5;
  const FieldConfig f(p, 64);
  std::int64_t operators = 0;
  auto check = [&](const OperatorSpec& op, const OperatorSpec& scaled, const std::string& name) {
    ++operators;
    const Verdict hc = decide(op, Property::Hypercyclic);
    const Verdict sc = decide(op, Property::Supercyclic);
    t.expect(!hc.yes() || sc.yes(), [&] { return "HC Yes without SC Yes, " + name; });
    t.expect(!hc.yes() || operator_norm(op) > NormExp::one(), [&] { return "HC Yes with norm <= 1, " + name; });
    t.expect(decide(scaled, Property::Supercyclic).yes() == sc.yes(),
             [&] { return "SC verdict changed under scaling, " + name; });
    t.expect(hc.yes() == hc.certificate.has_value() && sc.yes() == sc.certificate.has_value(),
             [&] { return "certificate presence mismatch, " + name; });
  };
  for (std::int64_t vl = kGridLo; vl <= kGridHi; ++vl) {
    for (std::int64_t vm = kGridLo; vm <= kGridHi; ++vm) {
      const Q ql = unit(rng, p) * pow_p(p, vl);
      const Q qm = unit(rng, p) * pow_p(p, vm);
      const Q c = scalar(rng, p, -3, 3);
      for (bool integers : {false, true}) {
        check(LambdaMu(oracle::to_lib(f, ql), oracle::to_lib(f, qm), dom(integers)),
              LambdaMu(oracle::to_lib(f, c * ql), oracle::to_lib(f, c * qm), dom(integers)),
              "lambda-mu v=(" + std::to_string(vl) + "," + std::to_string(vm) + ")");
      }
    }
  }
  for (std::int64_t i = 0; i < kMetaModels; ++i) {
    const PadicScalar c = oracle::to_lib(f, scalar(rng, p, -3, 3));
    QWeights qb{sequence(rng, p, 4, 8, -3, 3), sequence(rng, p, 4, 8, -3, 3)};
    const WeightModel b = oracle::to_lib(f, qb);
    check(BilateralBackwardShift(b), BilateralBackwardShift(b.scaled(c)), "bilateral model " + std::to_string(i));
    QWeights qu{sequence(rng, p, 4, 8, -3, 3), std::nullopt};
    const WeightModel u = oracle::to_lib(f, qu);
    check(UnilateralBackwardShift(u), UnilateralBackwardShift(u.scaled(c)), "unilateral model " + std::to_string(i));
  }
  passed = t.ok();
  return t.summary(std::to_string(operators) + " operators");
}

using Criterion = std::string (*)(Rng&, bool&);

struct Entry {
  const char* name;
  Criterion run;
};

constexpr Entry kEntries[kAcceptanceCriteria] = {
    {"field-laws", field_laws},
    {"power-oracle", power_oracle},
    {"right-inverse", right_inverse},
    {"decider-scan-agreement", decider_scan},
    {"lambda-mu-grid", lambda_mu_grid},
    {"transitivity-witnesses", transitivity},
    {"obstruction-certificates", obstruction},
    {"scaling-sequence", scaling},
    {"meta-checks", meta_checks},
};

}  // namespace

std::vector<AcceptanceResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<AcceptanceResult> out;
  for (int id = 1; id <= kAcceptanceCriteria; ++id) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) {
      continue;
    }
    const Entry& e = kEntries[id - 1];
    // Each criterion draws from its own stream so that subsets reproduce.
    Rng rng(options.seed * 1000003ULL + static_cast<std::uint64_t>(id));
    AcceptanceResult r{id, e.name, false, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
      r.detail = e.run(rng, r.passed);
    } catch (const std::exception& ex) {
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
    if (options.progress) options.progress(id);
  }
  return out;
}

std::string format_result(const AcceptanceResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail;
  return os.str();
}

}  // namespace padyn
