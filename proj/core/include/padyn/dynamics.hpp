#pragma once

// Constructive side of the theory: orbits, criterion verification on basis
// vectors, transitivity witnesses z = x + S^n y, exact norm obstructions and
// the scaling sequence that balances ||x_n|| against ||y_n||.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padyn/criteria.hpp"
#include "padyn/ops.hpp"
#include "padyn/tailed.hpp"

namespace padyn {

struct OrbitPoint {
  std::int64_t n;
  FinVector x;
  NormExp norm;
};

/// x, Tx, ..., T^{n_max} x with their sup norms.
std::vector<OrbitPoint> orbit(const OperatorSpec& op, const FinVector& x, std::int64_t n_max);

struct CriterionOptions {
  /// Basis e_1..e_B over N, e_{-B}..e_B over Z.
  std::int64_t basis_bound = 20;
  /// k = 1..depth.
  std::int64_t depth = 40;
  /// Thresholds p^{-m}, m = 1..max_threshold.
  std::int64_t max_threshold = 20;
};

struct CriterionStep {
  std::int64_t k = 0;
  std::int64_t n = 0;
  /// max_i ||T^n e_i||.
  NormExp orbit_norm = NormExp::zero();
  /// max_i ||S^n e_i||; empty when some S^n e_i is not in c0.
  std::optional<NormExp> inverse_norm;
  /// T^n S^n e_i = e_i for every tested i.
  bool identity_exact = true;
};

/// A "tends to zero" condition certified on the finite prefix k = 1..depth:
/// for each threshold p^{-m} the quantity stays <= p^{-m} for all k >= K(m).
struct ConditionResult {
  std::string name;
  bool holds = false;
  /// K(m) for m = 1..max_threshold; empty entries were never reached.
  std::vector<std::optional<std::int64_t>> first_k;
  std::string detail;
};

struct CriterionReport {
  Property property;
  std::string operator_description;
  std::string inverse_description;
  SubsequenceCertificate sequence;
  CriterionOptions options;
  std::vector<CriterionStep> steps;
  std::vector<ConditionResult> conditions;
  bool passed = false;
};

/// Conditions: T^{n_k} e_i -> 0, S^{n_k} e_i -> 0, T^{n_k} S^{n_k} e_i = e_i.
CriterionReport verify_hc_criterion(const OperatorSpec& op, const OperatorSpec& right_inverse,
                                    const SubsequenceCertificate& sequence, const CriterionOptions& options = {});
/// Conditions: ||T^{n_k} e_i|| * ||S^{n_k} e_j|| -> 0, T^{n_k} S^{n_k} e_j = e_j.
CriterionReport verify_sc_criterion(const OperatorSpec& op, const OperatorSpec& right_inverse,
                                    const SubsequenceCertificate& sequence, const CriterionOptions& options = {});

struct TransitivityWitness {
  std::int64_t n;
  TailedVector z;
  /// T^n z.
  TailedVector image;
  Ball u;
  Ball v;
  bool in_u;
  bool in_v;
};

/// Tries n = 0 and then n = n_k <= n_max, with z = center(U) + S^n center(V).
/// An empty result is inconclusive, not a disproof.
std::optional<TransitivityWitness> transitivity_witness(const OperatorSpec& op, const OperatorSpec& right_inverse,
                                                        const Ball& u, const Ball& v, std::int64_t n_max,
                                                        const SubsequenceCertificate& sequence = {});

enum class ScalingBranch { BothZero, OnlyYNonzero, OnlyXNonzero, BothNonzero };
std::string_view to_string(ScalingBranch b);

/// |lambda_n| = p^{-alpha}; scaled_x = ||lambda_n x_n||, scaled_y = ||lambda_n^{-1} y_n||.
struct ScalingTerm {
  std::int64_t n;
  std::int64_t alpha;
  ScalingBranch branch;
  NormExp scaled_x;
  NormExp scaled_y;
  /// p * (||x_n|| ||y_n||)^{1/2} rounded down to the value group; Zero when a vector vanishes.
  NormExp bound;
};

/// Pairs are indexed n = 1, 2, ... Throws HypothesisViolated unless the
/// products ||x_n|| ||y_n|| decay: the largest product over the second half
/// of the list must lie strictly below the largest over the whole list.
std::vector<ScalingTerm> scaling_sequence(const std::vector<std::pair<FinVector, FinVector>>& pairs);

enum class ObstructionCase { LambdaDominates, MuDominates };

struct ObstructionStep {
  std::int64_t n;
  /// Coordinate at the critical index (k, or l - n).
  NormExp critical;
  /// |lambda|^n |x_k|, or |mu|^n |x_l|.
  NormExp expected;
  /// Coordinate at the target index k + 1 (or m + 1).
  NormExp target;
  bool identity_holds;
  bool strict_holds;
};

struct ObstructionWitness {
  ObstructionCase kase;
  FinVector x;
  /// k when |lambda| >= |mu|; l (first index attaining ||x||) otherwise.
  Index critical_index;
  /// e_target is kept at distance >= 1 from every alpha T^n x.
  Index target_index;
  std::int64_t n_max;
  std::vector<ObstructionStep> steps;
  bool certified;
  std::string distance_bound;
};

/// Certifies the dominant-coordinate identities of lambda*I + mu*B for n <= n_max.
ObstructionWitness obstruction_witness_lambda_mu(const PadicScalar& lambda, const PadicScalar& mu,
                                                 const FinVector& x, std::int64_t n_max);

struct Lem3Options {
  std::int64_t k_max = 6;
  std::int64_t n_max = 12;
  std::int64_t samples = 4;
  std::uint64_t seed = 1;
};

/// Samples x with v(x_k) = d (3^k + 1), d = v(lambda) - v(mu) (so |x_k| = r^{3^k+1},
/// r = |lambda|/|mu|) and checks the invariant-set argument for 1 <= |lambda| < |mu|.
struct Lem3Report {
  std::int64_t d;
  std::int64_t samples_checked = 0;
  bool band_ok = true;
  bool domination_ok = true;
  bool orbit_scaling_ok = true;
  bool first_coordinate_ok = true;
  bool ball_disjoint_ok = true;
  bool passed = false;
  std::vector<std::string> failures;
};

Lem3Report lem3_invariance_check(const PadicScalar& lambda, const PadicScalar& mu, const Lem3Options& options = {});

struct FiniteDimReport {
  /// |a| <= 1: a^n stays at distance |z| > 1 from every sampled |z| > 1.
  /// |a| > 1: |a^n - w| = |a|^n > 1 for every sampled |w| <= 1.
  bool small_case;
  std::int64_t n_max;
  std::int64_t checks = 0;
  bool certified = true;
  std::string statement;
};

FiniteDimReport finite_dim_obstruction(const PadicScalar& a, std::int64_t n_max = 20, std::uint64_t seed = 1);

}  // namespace padyn
