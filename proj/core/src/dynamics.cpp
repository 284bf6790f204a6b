#include "padyn/dynamics.hpp"

#include <algorithm>
#include <random>
#include <type_traits>

namespace padyn {

std::vector<OrbitPoint> orbit(const OperatorSpec& op, const FinVector& x, std::int64_t n_max) {
  if (n_max < 0) throw Error(ErrorCode::OutOfRange, "n_max must be >= 0");
  std::vector<OrbitPoint> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    FinVector y = apply_power(op, n, x);
    NormExp nrm = sup_norm(y);
    out.push_back({n, std::move(y), nrm});
  }
  return out;
}

// -------------------------------------------------------------- criteria

namespace {

IndexDomain criterion_domain(const OperatorSpec& op, const OperatorSpec& inverse) {
  if (auto d = operator_domain(op)) return *d;
  if (auto d = operator_domain(inverse)) return *d;
  throw Error(ErrorCode::Unsupported, "criterion check needs an operator with a fixed index domain");
}

std::vector<Index> basis_indices(IndexDomain d, std::int64_t bound) {
  std::vector<Index> out;
  for (Index i = d == IndexDomain::Naturals ? 1 : -bound; i <= bound; ++i) out.push_back(i);
  return out;
}

// Empty values stand for "not in c0", above every threshold.
ConditionResult tends_to_zero(std::string name, const std::vector<std::optional<NormExp>>& values,
                              std::int64_t max_threshold) {
  ConditionResult r;
  r.name = std::move(name);
  r.holds = true;
  const auto depth = static_cast<std::int64_t>(values.size());
  for (std::int64_t m = 1; m <= max_threshold; ++m) {
    const NormExp thr = NormExp::pow(-m);
    std::optional<std::int64_t> first;
    for (std::int64_t k = depth; k >= 1; --k) {
      const auto& v = values[static_cast<std::size_t>(k - 1)];
      if (!v || *v > thr) break;
      first = k;
    }
    if (!first) {
      r.holds = false;
      if (r.detail.empty()) r.detail = "not below p^-" + std::to_string(m) + " at k = " + std::to_string(depth);
    }
    r.first_k.push_back(first);
  }
  if (r.holds) r.detail = "below p^-" + std::to_string(max_threshold) + " from k = " + std::to_string(*r.first_k.back());
  return r;
}

CriterionReport run_criterion(const OperatorSpec& op, const OperatorSpec& inverse, const SubsequenceCertificate& seq,
                              const CriterionOptions& opts, Property property) {
  if (opts.basis_bound < 1 || opts.depth < 1 || opts.max_threshold < 1) {
    throw Error(ErrorCode::OutOfRange, "basis_bound, depth and max_threshold must be >= 1");
  }
  if (seq.multiplier < 1) throw Error(ErrorCode::OutOfRange, "subsequence multiplier must be >= 1");
  const IndexDomain domain = criterion_domain(op, inverse);
  FieldConfig field = std::visit(
      [](const auto& t) -> FieldConfig {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, Identity>) {
          throw Error(ErrorCode::Unsupported, "criterion check needs a field-carrying operator");
        } else if constexpr (std::is_same_v<T, ScalarMul>) {
          return t.lambda.field();
        } else if constexpr (std::is_same_v<T, LambdaMu> || std::is_same_v<T, RightInverseLambdaMu>) {
          return t.lambda.field();
        } else {
          return t.weights.field();
        }
      },
      op);
  CriterionReport rep{property, describe(op), describe(inverse), seq, opts, {}, {}, false};
  const auto basis = basis_indices(domain, opts.basis_bound);
  std::vector<std::optional<NormExp>> orbit_vals, inverse_vals, product_vals;
  bool identity_all = true;
  std::string identity_detail;
  for (std::int64_t k = 1; k <= opts.depth; ++k) {
    CriterionStep step;
    step.k = k;
    step.n = seq.term(k);
    NormExp inv_max = NormExp::zero();
    bool inv_in_c0 = true;
    for (Index i : basis) {
      const FinVector e = FinVector::basis(field, i, domain);
      step.orbit_norm = max(step.orbit_norm, sup_norm(apply_power(op, step.n, e)));
      const TailedVector s = apply_power(inverse, step.n, TailedVector(e));
      try {
        inv_max = max(inv_max, sup_norm(s));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::NotInC0) throw;
        inv_in_c0 = false;
      }
      if (!(apply_power(op, step.n, s) == TailedVector(e))) {
        step.identity_exact = false;
        if (identity_detail.empty()) {
          identity_detail = "T^n S^n e_i != e_i at i = " + std::to_string(i) + ", n = " + std::to_string(step.n);
        }
      }
    }
    if (inv_in_c0) step.inverse_norm = inv_max;
    identity_all = identity_all && step.identity_exact;
    orbit_vals.emplace_back(step.orbit_norm);
    inverse_vals.push_back(step.inverse_norm);
    if (step.inverse_norm) {
      product_vals.emplace_back(step.orbit_norm * *step.inverse_norm);
    } else {
      product_vals.emplace_back(std::nullopt);
    }
    rep.steps.push_back(std::move(step));
  }
  if (property == Property::Hypercyclic) {
    rep.conditions.push_back(tends_to_zero("orbit T^n x -> 0", orbit_vals, opts.max_threshold));
    rep.conditions.push_back(tends_to_zero("inverse S^n y -> 0", inverse_vals, opts.max_threshold));
  } else {
    rep.conditions.push_back(tends_to_zero("product ||T^n x|| ||S^n y|| -> 0", product_vals, opts.max_threshold));
  }
  ConditionResult id{"identity T^n S^n y = y", identity_all, {}, identity_all ? "exact at every k" : identity_detail};
  rep.conditions.push_back(std::move(id));
  rep.passed = std::all_of(rep.conditions.begin(), rep.conditions.end(), [](const auto& c) { return c.holds; });
  return rep;
}

}  // namespace

CriterionReport verify_hc_criterion(const OperatorSpec& op, const OperatorSpec& right_inverse,
                                    const SubsequenceCertificate& sequence, const CriterionOptions& options) {
  return run_criterion(op, right_inverse, sequence, options, Property::Hypercyclic);
}

CriterionReport verify_sc_criterion(const OperatorSpec& op, const OperatorSpec& right_inverse,
                                    const SubsequenceCertificate& sequence, const CriterionOptions& options) {
  return run_criterion(op, right_inverse, sequence, options, Property::Supercyclic);
}

// ----------------------------------------------------------- transitivity

std::optional<TransitivityWitness> transitivity_witness(const OperatorSpec& op, const OperatorSpec& right_inverse,
                                                        const Ball& u, const Ball& v, std::int64_t n_max,
                                                        const SubsequenceCertificate& sequence) {
  if (n_max < 0) throw Error(ErrorCode::OutOfRange, "n_max must be >= 0");
  if (sequence.multiplier < 1) throw Error(ErrorCode::OutOfRange, "subsequence multiplier must be >= 1");
  if (u.center.domain() != v.center.domain()) throw Error(ErrorCode::DomainMismatch, "balls over different domains");
  const FinVector& x = u.center;
  const TailedVector y(v.center);
  for (std::int64_t k = 0; sequence.term(k) <= n_max; ++k) {
    const std::int64_t n = sequence.term(k);
    const TailedVector sy = apply_power(right_inverse, n, y);
    NormExp sy_norm = NormExp::zero();
    try {
      sy_norm = sup_norm(sy);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotInC0) throw;
      continue;
    }
    if (!u.admits(sy_norm) || !v.admits(sup_norm(apply_power(op, n, x)))) continue;
    TailedVector z = vec_add(TailedVector(x), sy);
    TailedVector image = apply_power(op, n, z);
    const bool in_u = ball_contains(u, z);
    const bool in_v = ball_contains(v, image);
    if (in_u && in_v) return TransitivityWitness{n, std::move(z), std::move(image), u, v, in_u, in_v};
  }
  return std::nullopt;
}

// -------------------------------------------------------- scaling sequence

std::string_view to_string(ScalingBranch b) {
  switch (b) {
    case ScalingBranch::BothZero: return "both-zero";
    case ScalingBranch::OnlyYNonzero: return "only-y-nonzero";
    case ScalingBranch::OnlyXNonzero: return "only-x-nonzero";
    case ScalingBranch::BothNonzero: return "both-nonzero";
  }
  return "unknown";
}

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace

std::vector<ScalingTerm> scaling_sequence(const std::vector<std::pair<FinVector, FinVector>>& pairs) {
  std::vector<NormExp> products;
  products.reserve(pairs.size());
  for (const auto& [x, y] : pairs) products.push_back(sup_norm(x) * sup_norm(y));
  if (!products.empty()) {
    const NormExp all = *std::max_element(products.begin(), products.end());
    const NormExp late = *std::max_element(products.begin() + static_cast<std::ptrdiff_t>(products.size() / 2),
                                           products.end());
    if (!all.is_zero() && !(late < all)) {
      throw Error(ErrorCode::HypothesisViolated, "||x_n|| ||y_n|| does not decay: late maximum " + late.str() +
                                                     " versus overall maximum " + all.str());
    }
  }
  std::vector<ScalingTerm> out;
  out.reserve(pairs.size());
  std::int64_t n = 0;
  for (const auto& [x, y] : pairs) {
    ++n;
    const NormExp nx = sup_norm(x);
    const NormExp ny = sup_norm(y);
    ScalingTerm t{n, 0, ScalingBranch::BothZero, NormExp::zero(), NormExp::zero(), NormExp::zero()};
    if (nx.is_zero() && !ny.is_zero()) {
      t.branch = ScalingBranch::OnlyYNonzero;
      t.alpha = -(ny.exponent() + n);
    } else if (!nx.is_zero() && ny.is_zero()) {
      t.branch = ScalingBranch::OnlyXNonzero;
      t.alpha = n + nx.exponent();
    } else if (!nx.is_zero()) {
      // r^{2 alpha} <= ||y|| / ||x|| <= r^{2 alpha - 2} with r = 1/p.
      t.branch = ScalingBranch::BothNonzero;
      t.alpha = ceil_div(nx.exponent() - ny.exponent(), 2);
      t.bound = NormExp::pow(floor_div(nx.exponent() + ny.exponent(), 2) + 1);
    }
    const NormExp lam = NormExp::pow(-t.alpha);
    t.scaled_x = lam * nx;
    t.scaled_y = ny / lam;
    out.push_back(t);
  }
  return out;
}

// ------------------------------------------------------------ obstruction

ObstructionWitness obstruction_witness_lambda_mu(const PadicScalar& lambda, const PadicScalar& mu, const FinVector& x,
                                                 std::int64_t n_max) {
  if (x.is_zero()) throw Error(ErrorCode::ZeroVector, "obstruction needs a nonzero vector");
  if (n_max < 0) throw Error(ErrorCode::OutOfRange, "n_max must be >= 0");
  if (lambda.is_zero() && mu.is_zero()) throw Error(ErrorCode::ParameterViolation, "lambda = mu = 0");
  const LambdaMu t(lambda, mu, x.domain());
  const NormExp top = sup_norm(x);
  Index first = 0;
  Index last = 0;
  bool seen = false;
  for (const auto& [i, v] : x.entries()) {
    if (v.norm() == top) {
      if (!seen) first = i;
      last = i;
      seen = true;
    }
  }
  const bool lambda_dom = !lambda.is_zero() && lambda.norm() >= mu.norm();
  if (!lambda_dom && x.domain() != IndexDomain::Integers) {
    throw Error(ErrorCode::WrongDomain, "the |mu| > |lambda| obstruction needs a vector over Z");
  }
  ObstructionWitness w{lambda_dom ? ObstructionCase::LambdaDominates : ObstructionCase::MuDominates,
                       x, lambda_dom ? last : first, last + 1, n_max, {}, true, {}};
  const PadicScalar& dom = lambda_dom ? lambda : mu;
  const NormExp base = x.at(lambda_dom ? last : first).norm();
  for (std::int64_t n = 0; n <= n_max; ++n) {
    const FinVector y = apply_power(t, n, x);
    const Index crit = lambda_dom ? last : first - n;
    ObstructionStep s{n, y.at(crit).norm(), dom.norm().power(n) * base, y.at(last + 1).norm(), false, false};
    s.identity_holds = s.critical == s.expected;
    s.strict_holds = s.target < s.expected;
    w.certified = w.certified && s.identity_holds && s.strict_holds;
    w.steps.push_back(s);
  }
  const std::string c = lambda_dom ? "k = " + std::to_string(last) : "l - n with l = " + std::to_string(first);
  w.distance_bound =
      "for n <= " + std::to_string(n_max) + ": with u the coordinate at " + c + " and w the coordinate at " +
      std::to_string(last + 1) + ", |u| > |w|; hence for every alpha either |alpha u| >= 1 or |alpha w - 1| = 1, "
      "so ||alpha T^n x - e_" + std::to_string(last + 1) + "|| >= 1";
  return w;
}

// ------------------------------------------------------------------- lem3

namespace {

PadicScalar random_unit(std::mt19937_64& rng, const FieldConfig& f) {
  std::uniform_int_distribution<std::int64_t> dist(1, 999);
  std::int64_t a = 0;
  std::int64_t b = 0;
  do a = dist(rng);
  while (a % f.prime() == 0);
  do b = dist(rng);
  while (b % f.prime() == 0);
  if (rng() & 1U) a = -a;
  return PadicScalar::from_rational(f, a, b);
}

}  // namespace

Lem3Report lem3_invariance_check(const PadicScalar& lambda, const PadicScalar& mu, const Lem3Options& opt) {
  if (lambda.is_zero() || mu.is_zero() || lambda.norm() < NormExp::one() || !(lambda.norm() < mu.norm())) {
    throw Error(ErrorCode::ParameterViolation, "needs 1 <= |lambda| < |mu|");
  }
  if (opt.k_max < 2 || opt.k_max > 30) throw Error(ErrorCode::ParameterViolation, "k_max must lie in [2, 30]");
  if (opt.n_max < 0 || opt.samples < 1) throw Error(ErrorCode::ParameterViolation, "n_max >= 0 and samples >= 1");
  const FieldConfig& f = lambda.field();
  Lem3Report rep;
  rep.d = lambda.valuation() - mu.valuation();
  const LambdaMu t(lambda, mu, IndexDomain::Naturals);
  std::mt19937_64 rng(opt.seed);
  std::vector<std::int64_t> pow3(static_cast<std::size_t>(opt.k_max) + 2, 1);
  for (std::size_t k = 1; k < pow3.size(); ++k) pow3[k] = pow3[k - 1] * 3;
  auto fail = [&](bool& flag, std::string what) {
    flag = false;
    if (rep.failures.size() < 16) rep.failures.push_back(std::move(what));
  };
  const FinVector e2 = FinVector::basis(f, 2, IndexDomain::Naturals);
  for (std::int64_t s = 0; s < opt.samples; ++s) {
    FinVector x(f, IndexDomain::Naturals);
    for (std::int64_t k = 1; k <= opt.k_max; ++k) {
      const std::int64_t v = rep.d * (pow3[static_cast<std::size_t>(k)] + 1);
      x.set(k, PadicScalar::power_of_p(f, v) * random_unit(rng, f));
    }
    // r^{3^k+2} < |x_k| < r^{3^k} in valuations.
    for (std::int64_t k = 1; k <= opt.k_max; ++k) {
      const std::int64_t v = x.at(k).valuation();
      const std::int64_t p3 = pow3[static_cast<std::size_t>(k)];
      if (!(rep.d * p3 < v && v < rep.d * (p3 + 2))) fail(rep.band_ok, "band at k = " + std::to_string(k));
    }
    for (std::int64_t k = 1; k < opt.k_max; ++k) {
      if (!((lambda * x.at(k) + mu * x.at(k + 1)).norm() == (lambda * x.at(k)).norm())) {
        fail(rep.domination_ok, "|lambda x_k + mu x_{k+1}| != |lambda x_k| at k = " + std::to_string(k));
      }
    }
    for (std::int64_t n = 0; n <= opt.n_max; ++n) {
      const FinVector y = apply_power(t, n, x);
      const NormExp ln = lambda.norm().power(n);
      for (std::int64_t k = 1; k <= opt.k_max; ++k) {
        if (!(y.at(k).norm() == ln * x.at(k).norm())) {
          fail(rep.orbit_scaling_ok, "|(T^n x)_k| != |lambda|^n |x_k| at n = " + std::to_string(n) +
                                         ", k = " + std::to_string(k));
        }
      }
      if (!(y.at(1).norm() > y.at(2).norm())) fail(rep.first_coordinate_ok, "|y_1| <= |y_2| at n = " + std::to_string(n));
      if (dist(y, e2) < NormExp::one()) fail(rep.ball_disjoint_ok, "T^n x enters B(e_2, 1^-) at n = " + std::to_string(n));
    }
    ++rep.samples_checked;
  }
  rep.passed = rep.band_ok && rep.domination_ok && rep.orbit_scaling_ok && rep.first_coordinate_ok &&
               rep.ball_disjoint_ok;
  return rep;
}

// ------------------------------------------------------------ finite dim

FiniteDimReport finite_dim_obstruction(const PadicScalar& a, std::int64_t n_max, std::uint64_t seed) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroScalar, "determinant must be nonzero");
  if (n_max < 1) throw Error(ErrorCode::OutOfRange, "n_max must be >= 1");
  const FieldConfig& f = a.field();
  std::mt19937_64 rng(seed);
  FiniteDimReport rep{a.norm() <= NormExp::one(), n_max, 0, true, {}};
  std::vector<PadicScalar> samples;
  if (rep.small_case) {
    for (std::int64_t t = 1; t <= 3; ++t) {
      for (int j = 0; j < 4; ++j) samples.push_back(PadicScalar::power_of_p(f, -t) * random_unit(rng, f));
    }
  } else {
    samples.push_back(PadicScalar::zero(f));
    for (std::int64_t t = 0; t <= 2; ++t) {
      for (int j = 0; j < 4; ++j) samples.push_back(PadicScalar::power_of_p(f, t) * random_unit(rng, f));
    }
  }
  PadicScalar an = PadicScalar::one(f);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    an *= a;
    for (const auto& z : samples) {
      const NormExp d = (an - z).norm();
      const NormExp want = rep.small_case ? z.norm() : an.norm();
      rep.certified = rep.certified && d == want && d > NormExp::one();
      ++rep.checks;
    }
  }
  rep.statement = rep.small_case
                      ? "|a| <= 1: |a^n - z| = |z| > 1 for every sampled |z| > 1, so {a^n} misses K \\ B(0, 1)"
                      : "|a| > 1: |a^n - w| = |a|^n > 1 for every sampled |w| <= 1, so {a^n} misses B(0, 1)";
  return rep;
}

}  // namespace padyn
