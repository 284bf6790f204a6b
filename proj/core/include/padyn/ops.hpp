#pragma once

// Weighted shifts on c0(N) and c0(Z), lambda*I + mu*B, and the explicit
// right inverse of lambda*I + mu*B on c0(N).

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padyn/seq.hpp"
#include "padyn/tailed.hpp"

namespace padyn {

/// prefix followed by period repeated forever, indexed from position 0.
class PeriodicSequence {
 public:
  PeriodicSequence(std::vector<PadicScalar> prefix, std::vector<PadicScalar> period);

  const std::vector<PadicScalar>& prefix() const noexcept { return prefix_; }
  const std::vector<PadicScalar>& period() const noexcept { return period_; }
  const FieldConfig& field() const noexcept { return period_.front().field(); }

  const PadicScalar& at(std::uint64_t pos) const;
  /// Product of the entries at positions [from, to); 1 when empty.
  PadicScalar product(std::uint64_t from, std::uint64_t to) const;
  /// Largest and smallest entry norm.
  NormExp max_norm() const;
  NormExp min_norm() const;

  friend bool operator==(const PeriodicSequence&, const PeriodicSequence&) = default;

 private:
  std::vector<PadicScalar> prefix_;
  std::vector<PadicScalar> period_;
  PadicScalar period_product_;
};

/// Nonzero weights a_n. Over N: a_1, a_2, ... from `forward`. Over Z the
/// forward part gives a_1, a_2, ... and `backward` gives a_0, a_{-1}, ...
class WeightModel {
 public:
  static WeightModel unilateral(PeriodicSequence forward);
  static WeightModel bilateral(PeriodicSequence forward, PeriodicSequence backward);
  static WeightModel constant(IndexDomain domain, const PadicScalar& c);
  /// Weights p^v for the listed valuations.
  static WeightModel from_valuations(FieldConfig field, IndexDomain domain,
                                     const std::vector<std::int64_t>& forward_prefix,
                                     const std::vector<std::int64_t>& forward_period,
                                     const std::vector<std::int64_t>& backward_prefix = {},
                                     const std::vector<std::int64_t>& backward_period = {});

  IndexDomain domain() const noexcept { return domain_; }
  const FieldConfig& field() const noexcept { return forward_.field(); }
  const PeriodicSequence& forward() const noexcept { return forward_; }
  /// Present exactly for the Integers domain.
  const std::optional<PeriodicSequence>& backward() const noexcept { return backward_; }

  PadicScalar weight_at(Index n) const;
  /// a_from * ... * a_to; 1 when from > to.
  PadicScalar product(Index from, Index to) const;
  /// sup |a_n| and inf |a_n|.
  NormExp sup_norm() const;
  NormExp inf_norm() const;
  /// Every weight multiplied by c.
  WeightModel scaled(const PadicScalar& c) const;

  friend bool operator==(const WeightModel&, const WeightModel&) = default;

 private:
  WeightModel(IndexDomain domain, PeriodicSequence forward, std::optional<PeriodicSequence> backward);

  IndexDomain domain_;
  PeriodicSequence forward_;
  std::optional<PeriodicSequence> backward_;
};

PadicScalar weight_at(const WeightModel& w, Index n);

/// Pointwise sum a_n + b_n; throws ParameterViolation if some sum vanishes.
WeightModel weight_sum(const WeightModel& a, const WeightModel& b);

struct Identity {
  friend bool operator==(const Identity&, const Identity&) = default;
};
struct ScalarMul {
  PadicScalar lambda;
  friend bool operator==(const ScalarMul&, const ScalarMul&) = default;
};
/// B_a e_n = a_n e_{n-1} on c0(Z).
struct BilateralBackwardShift {
  explicit BilateralBackwardShift(WeightModel w);
  WeightModel weights;
  friend bool operator==(const BilateralBackwardShift&, const BilateralBackwardShift&) = default;
};
/// B_a e_1 = 0, B_a e_n = a_{n-1} e_{n-1} on c0(N).
struct UnilateralBackwardShift {
  explicit UnilateralBackwardShift(WeightModel w);
  WeightModel weights;
  friend bool operator==(const UnilateralBackwardShift&, const UnilateralBackwardShift&) = default;
};
/// S_a e_n = a_n^{-1} e_{n+1} on c0(N); stores the weights of B_a.
struct ForwardShift {
  explicit ForwardShift(WeightModel w);
  WeightModel weights;
  friend bool operator==(const ForwardShift&, const ForwardShift&) = default;
};
/// S e_n = a_{n+1}^{-1} e_{n+1} on c0(Z); stores the weights of B_a.
struct ForwardShiftBilateral {
  explicit ForwardShiftBilateral(WeightModel w);
  WeightModel weights;
  friend bool operator==(const ForwardShiftBilateral&, const ForwardShiftBilateral&) = default;
};
/// lambda*I + mu*B with B the unweighted backward shift.
struct LambdaMu {
  LambdaMu(PadicScalar lambda, PadicScalar mu, IndexDomain domain);
  PadicScalar lambda;
  PadicScalar mu;
  IndexDomain domain;
  friend bool operator==(const LambdaMu&, const LambdaMu&) = default;
};
/// The right inverse of lambda*I + mu*B: (Sx)_i = 0 left of the support of x
/// (in particular (Sx)_1 = 0 over N), (Sx)_{i+1} = -(lambda/mu)(Sx)_i + x_i/mu.
/// Requires mu != 0.
struct RightInverseLambdaMu {
  RightInverseLambdaMu(PadicScalar lambda, PadicScalar mu, IndexDomain domain = IndexDomain::Naturals);
  PadicScalar lambda;
  PadicScalar mu;
  IndexDomain domain;
  friend bool operator==(const RightInverseLambdaMu&, const RightInverseLambdaMu&) = default;
};

using OperatorSpec = std::variant<Identity, ScalarMul, BilateralBackwardShift, UnilateralBackwardShift,
                                  ForwardShift, ForwardShiftBilateral, LambdaMu, RightInverseLambdaMu>;

/// The index domain the operator acts on; empty for domain-agnostic operators.
std::optional<IndexDomain> operator_domain(const OperatorSpec& op);
std::string describe(const OperatorSpec& op);

FinVector apply(const OperatorSpec& op, const FinVector& x);
/// Tails are supported for Identity, ScalarMul, LambdaMu and the right inverse.
TailedVector apply(const OperatorSpec& op, const TailedVector& x);

FinVector apply_power(const OperatorSpec& op, std::int64_t n, const FinVector& x);
TailedVector apply_power(const OperatorSpec& op, std::int64_t n, const TailedVector& x);

/// S_{mu,lambda} x. The result has a geometric tail unless lambda = 0.
TailedVector right_inverse_apply(const PadicScalar& lambda, const PadicScalar& mu, const TailedVector& x);
/// S_{mu,lambda}^n x by the closed convolution formula.
TailedVector right_inverse_power(const PadicScalar& lambda, const PadicScalar& mu, std::int64_t n,
                                 const FinVector& x);

/// b_0 = 1, b_n = prod_{i=1}^n a_i^{-1}, b_{-n} = prod_{j=1}^n a_{-j+1}.
PadicScalar conjugated_weight(const WeightModel& a, Index n);

/// Exact operator norm. Throws Unsupported for an unbounded right inverse.
NormExp operator_norm(const OperatorSpec& op);

/// The right inverse used by the criteria: S_a for shifts, S_{mu,lambda} for
/// lambda*I + mu*B. Throws Unsupported otherwise.
OperatorSpec right_inverse_of(const OperatorSpec& op);

}  // namespace padyn
