#pragma once

// Exact hypercyclicity and supercyclicity deciders for the operator families
// with a known characterization. Weight conditions reduce to the growth of
// valuation partial sums, which for prefix+periodic weights is governed by
// the period mean.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "padyn/ops.hpp"

namespace padyn {

/// Partial sums S_n = v_0 + ... + v_{n-1} of a prefix+periodic integer sequence.
class ValuationSums {
 public:
  ValuationSums(std::vector<std::int64_t> prefix, std::vector<std::int64_t> period);
  explicit ValuationSums(const PeriodicSequence& seq);

  const std::vector<std::int64_t>& prefix() const noexcept { return prefix_; }
  const std::vector<std::int64_t>& period() const noexcept { return period_; }
  std::int64_t period_length() const noexcept { return static_cast<std::int64_t>(period_.size()); }
  std::int64_t period_sum() const noexcept { return period_sum_; }
  /// period_sum / period_length.
  mpq_class mean() const;

  std::int64_t at(std::int64_t pos) const;
  /// S_n for n >= 0.
  std::int64_t sum(std::int64_t n) const;
  /// Over all n >= 0: L*S_n - sigma*n lies in [deviation_min, deviation_max].
  std::int64_t deviation_min() const noexcept { return dev_min_; }
  std::int64_t deviation_max() const noexcept { return dev_max_; }

 private:
  std::vector<std::int64_t> prefix_;
  std::vector<std::int64_t> period_;
  std::int64_t prefix_sum_ = 0;
  std::int64_t period_sum_ = 0;
  std::int64_t dev_min_ = 0;
  std::int64_t dev_max_ = 0;
};

/// S+_n = sum_{i=1}^n v(a_i); over Z also S-_n = sum_{j=1}^n v(a_{-j+1}).
struct ValuationSumModel {
  static ValuationSumModel from(const WeightModel& w);

  IndexDomain domain;
  ValuationSums forward;
  std::optional<ValuationSums> backward;
};

enum class Property { Hypercyclic, Supercyclic };
enum class Answer { Yes, No };
enum class Rule {
  FiniteDim,
  BilateralHHH,
  BilateralCCC,
  UnilateralAlwaysSC,
  UnilateralUWHC,
  LambdaMuZ,
  LambdaMuN_HC,
  LambdaMuN_SC,
  PerturbationReduction,
};

std::string_view to_string(Property p);
std::string_view to_string(Answer a);
std::string_view to_string(Rule r);

/// n_k = multiplier * k. `m_exponent` is the smallest integer exceeding
/// max(0, max_n -v(a_n)) for shift weights, 0 otherwise.
struct SubsequenceCertificate {
  std::int64_t multiplier = 1;
  std::int64_t m_exponent = 0;
  std::string guarantee;

  std::int64_t term(std::int64_t k) const { return multiplier * k; }
};

struct Verdict {
  Property property;
  Answer answer;
  Rule rule;
  /// Short tag naming the condition that fired, e.g. "bilateral-sc-period-mean-test".
  std::string citation;
  std::string justification;
  /// Present for Yes verdicts.
  std::optional<SubsequenceCertificate> certificate;
  /// Present for No verdicts.
  std::string obstruction;

  bool yes() const noexcept { return answer == Answer::Yes; }
};

Verdict decide_bilateral_hypercyclic(const WeightModel& a);
Verdict decide_bilateral_supercyclic(const WeightModel& a);
Verdict decide_unilateral(const WeightModel& a, Property property);
Verdict decide_lambda_mu(const PadicScalar& lambda, const PadicScalar& mu, IndexDomain domain, Property property);
/// Operators on a space of dimension `dim` are never hypercyclic.
Verdict decide_finite_dim(std::int64_t dim);

/// Requires |a_n| > |b_n| for every n; then |a_n + b_n| = |a_n| and the
/// returned model carries a's valuations. Throws PrecedenceViolation.
WeightModel perturbation_reduce(const WeightModel& a, const WeightModel& b);
/// Verdict for the shift with weights a + b, decided through a.
Verdict decide_perturbed(const WeightModel& a, const WeightModel& b, Property property);

/// Dispatches on the operator family; throws Unsupported for families
/// without a characterization (identity, scalars, forward shifts, ...).
Verdict decide(const OperatorSpec& op, Property property);

}  // namespace padyn
