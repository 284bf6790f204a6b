#include "padyn/criteria.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padyn {

// ----------------------------------------------------------- ValuationSums

ValuationSums::ValuationSums(std::vector<std::int64_t> prefix, std::vector<std::int64_t> period)
    : prefix_(std::move(prefix)), period_(std::move(period)) {
  if (period_.empty()) throw Error(ErrorCode::ParameterViolation, "valuation period must be nonempty");
  for (auto v : prefix_) prefix_sum_ += v;
  for (auto v : period_) period_sum_ += v;
  // L*S_n - sigma*n is periodic in n past the prefix, so one pass over
  // [0, prefix + period) covers every n.
  const std::int64_t len = period_length();
  std::int64_t s = 0;
  const auto total = static_cast<std::int64_t>(prefix_.size()) + len;
  for (std::int64_t n = 0; n < total; ++n) {
    const std::int64_t dev = len * s - period_sum_ * n;
    dev_min_ = std::min(dev_min_, dev);
    dev_max_ = std::max(dev_max_, dev);
    s += at(n);
  }
}

namespace {

std::vector<std::int64_t> valuations(const std::vector<PadicScalar>& xs) {
  std::vector<std::int64_t> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.valuation());
  return out;
}

}  // namespace

ValuationSums::ValuationSums(const PeriodicSequence& seq)
    : ValuationSums(valuations(seq.prefix()), valuations(seq.period())) {}

mpq_class ValuationSums::mean() const {
  mpq_class q(static_cast<long>(period_sum_), static_cast<unsigned long>(period_.size()));
  q.canonicalize();
  return q;
}

std::int64_t ValuationSums::at(std::int64_t pos) const {
  if (pos < 0) throw Error(ErrorCode::OutOfRange, "negative position");
  const auto p = static_cast<std::int64_t>(prefix_.size());
  if (pos < p) return prefix_[static_cast<std::size_t>(pos)];
  return period_[static_cast<std::size_t>((pos - p) % period_length())];
}

std::int64_t ValuationSums::sum(std::int64_t n) const {
  if (n < 0) throw Error(ErrorCode::OutOfRange, "negative partial sum length");
  const auto p = static_cast<std::int64_t>(prefix_.size());
  std::int64_t s = 0;
  if (n <= p) {
    for (std::int64_t i = 0; i < n; ++i) s += prefix_[static_cast<std::size_t>(i)];
    return s;
  }
  s = prefix_sum_;
  const std::int64_t rest = n - p;
  const std::int64_t len = period_length();
  s += (rest / len) * period_sum_;
  for (std::int64_t i = 0; i < rest % len; ++i) s += period_[static_cast<std::size_t>(i)];
  return s;
}

ValuationSumModel ValuationSumModel::from(const WeightModel& w) {
  ValuationSumModel m{w.domain(), ValuationSums(w.forward()), std::nullopt};
  if (w.backward()) m.backward.emplace(*w.backward());
  return m;
}

// ------------------------------------------------------------------ names

std::string_view to_string(Property p) { return p == Property::Hypercyclic ? "hypercyclic" : "supercyclic"; }

std::string_view to_string(Answer a) { return a == Answer::Yes ? "Yes" : "No"; }

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::FiniteDim: return "FiniteDim";
    case Rule::BilateralHHH: return "BilateralHHH";
    case Rule::BilateralCCC: return "BilateralCCC";
    case Rule::UnilateralAlwaysSC: return "UnilateralAlwaysSC";
    case Rule::UnilateralUWHC: return "UnilateralUWHC";
    case Rule::LambdaMuZ: return "LambdaMuZ";
    case Rule::LambdaMuN_HC: return "LambdaMuN_HC";
    case Rule::LambdaMuN_SC: return "LambdaMuN_SC";
    case Rule::PerturbationReduction: return "PerturbationReduction";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- helpers

namespace {

std::int64_t ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

mpq_class qmax(const mpq_class& a, const mpq_class& b) { return a < b ? b : a; }

mpq_class ratio(std::int64_t num, std::int64_t den) {
  mpq_class q(static_cast<long>(num), static_cast<unsigned long>(den));
  q.canonicalize();
  return q;
}

std::string qstr(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// Smallest integer exceeding max(0, max_n -v(a_n)).
std::int64_t m_exponent(const WeightModel& w) {
  std::int64_t worst = 0;
  auto scan = [&](const PeriodicSequence& s) {
    for (const auto* list : {&s.prefix(), &s.period()}) {
      for (const auto& a : *list) worst = std::max(worst, -a.valuation());
    }
  };
  scan(w.forward());
  if (w.backward()) scan(*w.backward());
  return worst + 1;
}

void require(const WeightModel& a, IndexDomain d) {
  if (a.domain() != d) {
    throw Error(ErrorCode::WrongDomain, "decider needs a weight model over " + std::string(to_string(d)));
  }
}

Verdict no(Property p, Rule r, std::string citation, std::string justification, std::string obstruction) {
  return Verdict{p, Answer::No, r, std::move(citation), std::move(justification), std::nullopt, std::move(obstruction)};
}

Verdict yes(Property p, Rule r, std::string citation, std::string justification, SubsequenceCertificate cert) {
  return Verdict{p, Answer::Yes, r, std::move(citation), std::move(justification), std::move(cert), {}};
}

// beta(m) = v(b_m) is -S+_m for m >= 0 and S-_{-m} for m < 0.
struct BetaBounds {
  mpq_class m_f, m_b;
  mpq_class below_f, above_f;  // beta(m) >= -m_f m - below_f, beta(m) <= -m_f m + above_f
  mpq_class below_b, above_b;  // beta(-m) >= m_b m - below_b, beta(-m) <= m_b m + above_b
};

BetaBounds beta_bounds(const ValuationSumModel& m) {
  const ValuationSums& f = m.forward;
  const ValuationSums& b = *m.backward;
  BetaBounds bb;
  bb.m_f = f.mean();
  bb.m_b = b.mean();
  bb.below_f = ratio(f.deviation_max(), f.period_length());
  bb.above_f = ratio(-f.deviation_min(), f.period_length());
  bb.below_b = ratio(-b.deviation_min(), b.period_length());
  bb.above_b = ratio(b.deviation_max(), b.period_length());
  return bb;
}

std::string means_str(const BetaBounds& bb) {
  return "forward period mean m_f = " + qstr(bb.m_f) + ", backward period mean m_b = " + qstr(bb.m_b);
}

}  // namespace

// ------------------------------------------------------------- deciders

namespace {

constexpr const char* kCriticalIndex =
    "|lambda| >= |mu|: at the last index k attaining ||x||, |x_k^(n)| = |lambda^n x_k| > |x_{k+1}^(n)|, so "
    "||alpha T^n x - e_{k+1}|| >= 1 for every alpha";

std::string hc_obstruction(const PadicScalar& lambda, const PadicScalar& mu) {
  if (mu.is_zero() || (!lambda.is_zero() && lambda.norm() >= mu.norm())) return kCriticalIndex;
  if (mu.norm() <= NormExp::one()) return "|lambda| < |mu| <= 1: ||T|| <= 1, and a hypercyclic operator has norm > 1";
  return "1 <= |lambda| < |mu|: the open set U = {r^{3^k+2} < |x_k| < r^{3^k}} satisfies T(U) in lambda U, and "
         "lambda^n U misses the unit ball around e_2";
}

}  // namespace

Verdict decide_bilateral_hypercyclic(const WeightModel& a) {
  require(a, IndexDomain::Integers);
  const BetaBounds bb = beta_bounds(ValuationSumModel::from(a));
  const std::string means = means_str(bb);
  const std::string q_note = " The shift q in the liminf only moves a bounded window, so the q-free divergence decides.";
  if (!(bb.m_f < 0 && bb.m_b > 0)) {
    return no(Property::Hypercyclic, Rule::BilateralHHH, "bilateral-hc-period-mean-test",
              means + "; needs m_f < 0 < m_b." + q_note,
              bb.m_f >= 0 ? "S+_n >= m_f n - const stays bounded below, so prod |a_i^{-1}| does not tend to 0"
                          : "S-_n <= m_b n + const stays bounded above, so prod |a_{-j+1}| does not tend to 0");
  }
  // With g_f = -m_f, g_b = m_b, G = max, c' = max(above_f, above_b):
  // C >= 1 + (G + 1 + max(0, c_dir + c')) / g_dir makes every criterion
  // norm <= p^{-k} at n_k = C k for |i| <= k.
  const mpq_class g_f = -bb.m_f;
  const mpq_class g_b = bb.m_b;
  const mpq_class G = qmax(g_f, g_b);
  const mpq_class cp = qmax(bb.above_f, bb.above_b);
  const mpq_class cf = 1 + (G + 1 + qmax(0, bb.below_f + cp)) / g_f;
  const mpq_class cb = 1 + (G + 1 + qmax(0, bb.below_b + cp)) / g_b;
  SubsequenceCertificate cert;
  cert.multiplier = std::max<std::int64_t>({2, ceil_q(cf), ceil_q(cb)});
  cert.m_exponent = m_exponent(a);
  cert.guarantee = "for |i| <= k: ||B^{n_k} e_i|| <= p^-k and ||S^{n_k} e_i|| <= p^-k";
  return yes(Property::Hypercyclic, Rule::BilateralHHH, "bilateral-hc-period-mean-test",
             means + "; m_f < 0 < m_b so S+_n -> -inf and S-_n -> +inf linearly." + q_note, cert);
}

Verdict decide_bilateral_supercyclic(const WeightModel& a) {
  require(a, IndexDomain::Integers);
  const BetaBounds bb = beta_bounds(ValuationSumModel::from(a));
  const std::string means = means_str(bb);
  const mpq_class g = bb.m_b - bb.m_f;
  if (g <= 0) {
    return no(Property::Supercyclic, Rule::BilateralCCC, "bilateral-sc-period-mean-test",
              means + "; needs m_f - m_b < 0. A common scalar factor on the weights cancels in S+ - S-.",
              "S+_n - S-_n >= (m_f - m_b) n - const stays bounded below, so the product does not tend to 0");
  }
  // beta(i+n) + beta(j-n) - beta(i) - beta(j) >= g n - (|m_f| + |m_b|) k - consts - 2 G' k
  const mpq_class af = abs(bb.m_f);
  const mpq_class ab = abs(bb.m_b);
  const mpq_class G = qmax(af, ab);
  const mpq_class consts = bb.below_f + bb.below_b + 2 * qmax(bb.above_f, bb.above_b);
  const mpq_class c = (af + ab + 2 * G + 1 + qmax(0, consts)) / g;
  SubsequenceCertificate cert;
  cert.multiplier = std::max<std::int64_t>(2, ceil_q(c));
  cert.m_exponent = m_exponent(a);
  cert.guarantee = "for |i|, |j| <= k: ||B^{n_k} e_i|| * ||S^{n_k} e_j|| <= p^-k";
  return yes(Property::Supercyclic, Rule::BilateralCCC, "bilateral-sc-period-mean-test",
             means + "; m_f - m_b < 0 so S+_n - S-_n -> -inf linearly.", cert);
}

Verdict decide_unilateral(const WeightModel& a, Property property) {
  require(a, IndexDomain::Naturals);
  const ValuationSums f(a.forward());
  const mpq_class m_f = f.mean();
  if (property == Property::Supercyclic) {
    SubsequenceCertificate cert;
    cert.multiplier = 1;
    cert.m_exponent = m_exponent(a);
    cert.guarantee = "B^k e_i = 0 for k >= i and B^k S^k = I";
    return yes(property, Rule::UnilateralAlwaysSC, "unilateral-always-supercyclic",
               "every unilateral weighted backward shift is supercyclic: B^k x = 0 for large k", cert);
  }
  const std::string mean = "forward period mean m_f = " + qstr(m_f);
  if (m_f >= 0) {
    return no(property, Rule::UnilateralUWHC, "unilateral-hc-period-mean-test", mean + "; needs m_f < 0.",
              "S+_n >= m_f n - const is bounded below, so prod |a_i| stays bounded");
  }
  // ||S^n e_i|| = p^{S+_{i+n-1} - S+_{i-1}} <= p^{m_f n + (Dmax - Dmin)/L}.
  const mpq_class spread = ratio(f.deviation_max() - f.deviation_min(), f.period_length());
  SubsequenceCertificate cert;
  cert.multiplier = std::max<std::int64_t>(1, ceil_q((1 + spread) / -m_f));
  cert.m_exponent = m_exponent(a);
  cert.guarantee = "for i <= k: B^{n_k} e_i = 0 and ||S^{n_k} e_i|| <= p^-k";
  return yes(property, Rule::UnilateralUWHC, "unilateral-hc-period-mean-test",
             mean + "; m_f < 0 so prod |a_i| = p^{-S+_n} -> inf.", cert);
}

Verdict decide_lambda_mu(const PadicScalar& lambda, const PadicScalar& mu, IndexDomain domain, Property property) {
  if (!(lambda.field() == mu.field())) throw Error(ErrorCode::FieldMismatch, "lambda and mu over different fields");
  const std::string params = "|lambda| = " + lambda.norm().str() + ", |mu| = " + mu.norm().str();
  if (domain == IndexDomain::Integers) {
    return no(property, Rule::LambdaMuZ, "lambda-mu-on-Z-not-supercyclic",
              params + "; lambda*I + mu*B on c0(Z) is not supercyclic for any lambda, mu.",
              "at the critical index the orbit coordinate dominates: |x_k^(n)| = |lambda^n x_k| when "
              "|lambda| >= |mu|, |y_{l-n}^(n)| = |mu^n y_l| otherwise");
  }
  const bool lz = lambda.is_zero();
  const bool mz = mu.is_zero();
  const std::int64_t vl = lambda.valuation();
  const std::int64_t vm = mu.valuation();
  if (property == Property::Hypercyclic) {
    const bool ok = !mz && vm < 0 && (lz || vl > 0);
    if (!ok) {
      return no(property, Rule::LambdaMuN_HC, "lambda-mu-hc-iff-|l|<1<|m|", params + "; needs |lambda| < 1 < |mu|.",
                hc_obstruction(lambda, mu));
    }
    // ||T^n e_i|| <= p^{-vl n + (i-1)(vl - vm)}, ||S^n e_i|| <= p^{vm n}.
    SubsequenceCertificate cert;
    cert.multiplier = lz ? 1 : std::max<std::int64_t>(1, ceil_q(ratio(1 + vl - vm, vl)));
    cert.guarantee = "for i <= k: ||T^{n_k} e_i|| <= p^-k and ||S^{n_k} e_i|| <= p^-k";
    return yes(property, Rule::LambdaMuN_HC, "lambda-mu-hc-iff-|l|<1<|m|", params + "; |lambda| < 1 < |mu|.", cert);
  }
  const bool ok = !mz && (lz || vl > vm);
  if (!ok) {
    return no(property, Rule::LambdaMuN_SC, "lambda-mu-sc-iff-|l|<|m|", params + "; needs |lambda| < |mu|.",
              kCriticalIndex);
  }
  // ||T^n e_i|| ||S^n e_j|| <= (|lambda|/|mu|)^{n-i+1}.
  SubsequenceCertificate cert;
  cert.multiplier = lz ? 1 : 2;
  cert.guarantee = "for i, j <= k: ||T^{n_k} e_i|| * ||S^{n_k} e_j|| <= p^-k";
  return yes(property, Rule::LambdaMuN_SC, "lambda-mu-sc-iff-|l|<|m|", params + "; |lambda| < |mu|.", cert);
}

Verdict decide_finite_dim(std::int64_t dim) {
  if (dim < 1) throw Error(ErrorCode::ParameterViolation, "dimension must be >= 1");
  return no(Property::Hypercyclic, Rule::FiniteDim, "finite-dim-det-dichotomy",
            "dimension " + std::to_string(dim) + ": no operator on a finite-dimensional space is hypercyclic.",
            "with a = det T, the set {a^n} is not dense: |a^n - z| > 1 for every |z| > 1 when |a| <= 1, and "
            "|a^n - w| = |a|^n > 1 for every |w| <= 1 when |a| > 1");
}

// ----------------------------------------------------------- perturbation

namespace {

void check_dominates(const PeriodicSequence& a, const PeriodicSequence& b, bool backward) {
  const std::size_t p = std::max(a.prefix().size(), b.prefix().size());
  const std::size_t len = std::lcm(a.period().size(), b.period().size());
  for (std::size_t pos = 0; pos < p + len; ++pos) {
    if (!(a.at(pos).norm() > b.at(pos).norm())) {
      const auto n = backward ? -static_cast<std::int64_t>(pos) : static_cast<std::int64_t>(pos) + 1;
      throw Error(ErrorCode::PrecedenceViolation, "|a_n| > |b_n| fails at n = " + std::to_string(n));
    }
  }
}

PeriodicSequence valuation_profile(const PeriodicSequence& s) {
  const FieldConfig& f = s.field();
  std::vector<PadicScalar> pre, per;
  for (const auto& w : s.prefix()) pre.push_back(PadicScalar::power_of_p(f, w.valuation()));
  for (const auto& w : s.period()) per.push_back(PadicScalar::power_of_p(f, w.valuation()));
  return PeriodicSequence(std::move(pre), std::move(per));
}

}  // namespace

WeightModel perturbation_reduce(const WeightModel& a, const WeightModel& b) {
  if (a.domain() != b.domain()) throw Error(ErrorCode::DomainMismatch, "weight models over different domains");
  check_dominates(a.forward(), b.forward(), false);
  if (a.backward()) check_dominates(*a.backward(), *b.backward(), true);
  if (!a.backward()) return WeightModel::unilateral(valuation_profile(a.forward()));
  return WeightModel::bilateral(valuation_profile(a.forward()), valuation_profile(*a.backward()));
}

Verdict decide_perturbed(const WeightModel& a, const WeightModel& b, Property property) {
  const WeightModel reduced = perturbation_reduce(a, b);
  Verdict inner = a.domain() == IndexDomain::Naturals ? decide_unilateral(reduced, property)
                  : property == Property::Hypercyclic ? decide_bilateral_hypercyclic(reduced)
                                                      : decide_bilateral_supercyclic(reduced);
  inner.justification = "|a_n + b_n| = |a_n| for every n, so a + b is decided through a (" +
                        std::string(to_string(inner.rule)) + ", " + inner.citation + "): " + inner.justification;
  inner.rule = Rule::PerturbationReduction;
  inner.citation = "dominant-weight-perturbation";
  return inner;
}

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

Verdict decide(const OperatorSpec& op, Property property) {
  return std::visit(
      Overloaded{
          [&](const BilateralBackwardShift& t) {
            return property == Property::Hypercyclic ? decide_bilateral_hypercyclic(t.weights)
                                                     : decide_bilateral_supercyclic(t.weights);
          },
          [&](const UnilateralBackwardShift& t) { return decide_unilateral(t.weights, property); },
          [&](const LambdaMu& t) { return decide_lambda_mu(t.lambda, t.mu, t.domain, property); },
          [&](const auto&) -> Verdict {
            throw Error(ErrorCode::Unsupported, "no characterization for " + describe(op));
          },
      },
      op);
}

}  // namespace padyn
