#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "padyn/cli.hpp"
#include "padyn/dynamics.hpp"
#include "padyn/selftest.hpp"

namespace padyn::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::int64_t kDefaultOrbitN = 10;
constexpr std::int64_t kDefaultWitnessN = 1000;
constexpr std::int64_t kDefaultObstructionN = 100;
constexpr std::int64_t kDefaultFiniteDimN = 20;
constexpr std::uint64_t kDefaultSeed = 1;

[[noreturn]] void missing(const std::string& key, const std::string& why) {
  throw SpecError(SpecError::Kind::Validation, {{0, key, why}});
}

FieldConfig field_of(const ExperimentSpec& s) {
  if (!s.field.prime) missing("field.prime", "missing prime");
  return FieldConfig(static_cast<std::uint32_t>(*s.field.prime),
                     s.field.precision ? static_cast<int>(*s.field.precision) : kDefaultPrecision);
}

PadicScalar scalar_of(const FieldConfig& f, const mpq_class& q) {
  return PadicScalar::from_rational(f, q.get_num(), q.get_den());
}

FinVector vector_of(const FieldConfig& f, IndexDomain d, const VectorLiteral& v) {
  FinVector x(f, d);
  for (const auto& [i, q] : v) x.set(i, scalar_of(f, q));
  return x;
}

std::vector<PadicScalar> list_of(const FieldConfig& f, const WeightList& w) {
  std::vector<PadicScalar> out;
  if (w.valuations) {
    for (std::int64_t v : *w.valuations) out.push_back(PadicScalar::power_of_p(f, v));
  }
  if (w.values) {
    for (const auto& q : *w.values) out.push_back(scalar_of(f, q));
  }
  return out;
}

WeightModel weights_of(const FieldConfig& f, const WeightSection& w, bool bilateral) {
  PeriodicSequence fwd(list_of(f, w.forward_prefix), list_of(f, w.forward_period));
  if (!bilateral) return WeightModel::unilateral(std::move(fwd));
  return WeightModel::bilateral(std::move(fwd),
                                PeriodicSequence(list_of(f, w.backward_prefix), list_of(f, w.backward_period)));
}

bool is_shift(OperatorKind k) {
  return k == OperatorKind::UnilateralShift || k == OperatorKind::BilateralShift || k == OperatorKind::ForwardShift ||
         k == OperatorKind::ForwardShiftBilateral;
}

bool is_bilateral(OperatorKind k) {
  return k == OperatorKind::BilateralShift || k == OperatorKind::ForwardShiftBilateral;
}

OperatorKind kind_of(const ExperimentSpec& s) {
  if (!s.op.kind) missing("operator.kind", "missing operator kind");
  return *s.op.kind;
}

IndexDomain domain_of(const ExperimentSpec& s) {
  const OperatorKind k = kind_of(s);
  if (is_shift(k)) return is_bilateral(k) ? IndexDomain::Integers : IndexDomain::Naturals;
  return s.op.domain.value_or(IndexDomain::Naturals);
}

std::int64_t capped(std::int64_t n, const RunOptions& o) { return o.budget ? std::min(n, *o.budget) : n; }

Json norm_json(const NormExp& n) { return n.is_zero() ? Json(nullptr) : Json(n.exponent()); }

std::string norm_human(const NormExp& n, std::uint32_t p) {
  return n.is_zero() ? "0" : std::to_string(p) + "^" + std::to_string(n.exponent());
}

std::vector<Property> properties(const ExperimentSpec& s) {
  switch (s.command.property.value_or(PropertyChoice::Both)) {
    case PropertyChoice::Hypercyclic: return {Property::Hypercyclic};
    case PropertyChoice::Supercyclic: return {Property::Supercyclic};
    case PropertyChoice::Both: break;
  }
  return {Property::Hypercyclic, Property::Supercyclic};
}

class Runner {
 public:
  Runner(const ExperimentSpec& spec, const RunOptions& opt) : spec_(spec), opt_(opt) {}

  RunOutput run() {
    RunOutput out;
    try {
      Json header{{"record", "header"}, {"tool", "padyn"}, {"command", opt_.command}};
      if (spec_.field.prime) header["prime"] = *spec_.field.prime;
      if (spec_.field.prime) header["precision"] = spec_.field.precision.value_or(kDefaultPrecision);
      if (spec_.op.kind) header["operator"] = std::string(to_string(*spec_.op.kind));
      emit(std::move(header));
      if (spec_.command.name && *spec_.command.name != opt_.command) {
        const auto it = spec_.lines.find("command.name");
        throw SpecError(SpecError::Kind::Validation,
                        {{it == spec_.lines.end() ? 0 : it->second, "command.name",
                          "spec is for '" + *spec_.command.name + "', not '" + opt_.command + "'"}});
      }
      if (opt_.command == "decide") exit_ = decide();
      else if (opt_.command == "orbit") exit_ = orbit();
      else if (opt_.command == "witness") exit_ = witness();
      else if (opt_.command == "verify-criterion") exit_ = verify();
      else if (opt_.command == "obstruct") exit_ = obstruct();
      else if (opt_.command == "selftest") exit_ = selftest();
      else throw Error(ErrorCode::Unsupported, "unknown command '" + opt_.command + "'");
    } catch (const SpecError& e) {
      error(std::string(to_string(e.kind())), e.what());
    } catch (const Error& e) {
      error(std::string(to_string(e.code())), e.what());
    } catch (const std::exception& e) {
      error("Internal", e.what());
    }
    const char* outcome = exit_ == kExitCompleted ? "completed" : exit_ == kExitInconclusive ? "inconclusive" : "error";
    emit(Json{{"record", "status"}, {"exit_code", exit_}, {"outcome", outcome}});
    human_ << "status: " << outcome << '\n';
    out.exit_code = exit_;
    out.human = human_.str();
    out.records = records_.str();
    return out;
  }

 private:
  void emit(Json j) { records_ << j.dump() << '\n'; }

  void error(const std::string& code, const std::string& message) {
    exit_ = kExitError;
    emit(Json{{"record", "error"}, {"code", code}, {"message", message}});
    human_ << "error: " << message << '\n';
  }

  std::uint64_t seed() const { return opt_.seed.value_or(spec_.command.seed.value_or(kDefaultSeed)); }
  std::uint32_t prime() const { return static_cast<std::uint32_t>(spec_.field.prime.value_or(0)); }

  void verdict(const Verdict& v) {
    Json j{{"record", "verdict"},
           {"property", to_string(v.property)},
           {"answer", to_string(v.answer)},
           {"rule", to_string(v.rule)},
           {"citation", v.citation},
           {"justification", v.justification}};
    human_ << to_string(v.property) << ": " << to_string(v.answer) << " [" << to_string(v.rule) << "; "
           << v.citation << "]\n  " << v.justification << '\n';
    if (v.certificate) {
      j["certificate"] = Json{{"multiplier", v.certificate->multiplier},
                              {"m_exponent", v.certificate->m_exponent},
                              {"guarantee", v.certificate->guarantee}};
      human_ << "  certificate: n_k = " << v.certificate->multiplier << "k; " << v.certificate->guarantee << '\n';
    } else {
      j["obstruction"] = v.obstruction;
      human_ << "  obstruction: " << v.obstruction << '\n';
    }
    emit(std::move(j));
  }

  int decide() {
    const FieldConfig f = field_of(spec_);
    const OperatorKind k = kind_of(spec_);
    if (k == OperatorKind::FiniteDim) {
      if (spec_.command.property == PropertyChoice::Supercyclic) {
        throw Error(ErrorCode::Unsupported, "only hypercyclicity is characterized for finite-dimensional operators");
      }
      verdict(decide_finite_dim(*spec_.op.dim));
      return kExitCompleted;
    }
    for (Property p : properties(spec_)) {
      if (spec_.perturbation.present() && (k == OperatorKind::UnilateralShift || k == OperatorKind::BilateralShift)) {
        verdict(decide_perturbed(weights_of(f, spec_.weights, is_bilateral(k)),
                                 weights_of(f, spec_.perturbation, is_bilateral(k)), p));
      } else {
        verdict(padyn::decide(build_operator(spec_), p));
      }
    }
    return kExitCompleted;
  }

  int orbit() {
    const FieldConfig f = field_of(spec_);
    if (!spec_.command.vector) missing("command.vector", "orbit needs a vector");
    const OperatorSpec op = build_operator(spec_);
    const FinVector x = vector_of(f, domain_of(spec_), *spec_.command.vector);
    const std::int64_t n_max = capped(spec_.command.n_max.value_or(kDefaultOrbitN), opt_);
    human_ << "orbit of " << x.str() << " under " << describe(op) << '\n';
    for (const auto& pt : padyn::orbit(op, x, n_max)) {
      emit(Json{{"record", "orbit-point"}, {"n", pt.n}, {"norm", norm_json(pt.norm)}, {"vector", pt.x.str()}});
      human_ << "  n=" << pt.n << "  norm " << norm_human(pt.norm, prime()) << "  " << pt.x.str() << '\n';
    }
    return kExitCompleted;
  }

  SubsequenceCertificate sequence_for(const OperatorSpec& op, Property p) {
    if (spec_.command.multiplier) return SubsequenceCertificate{*spec_.command.multiplier, 0, "from spec"};
    try {
      const Verdict v = padyn::decide(op, p);
      if (v.certificate) return *v.certificate;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Unsupported) throw;
    }
    return SubsequenceCertificate{1, 0, "n_k = k (no certificate available)"};
  }

  int verify() {
    const OperatorSpec op = build_operator(spec_);
    const OperatorSpec inv = right_inverse_of(op);
    CriterionOptions o;
    const auto& c = spec_.command;
    o.depth = capped(c.depth.value_or(o.depth), opt_);
    o.basis_bound = c.basis_bound.value_or(o.basis_bound);
    o.max_threshold = c.max_threshold.value_or(o.max_threshold);
    for (Property p : properties(spec_)) {
      const SubsequenceCertificate seq = sequence_for(op, p);
      const CriterionReport r = p == Property::Hypercyclic ? verify_hc_criterion(op, inv, seq, o)
                                                           : verify_sc_criterion(op, inv, seq, o);
      for (const auto& s : r.steps) {
        emit(Json{{"record", "criterion-step"},
                  {"property", to_string(p)},
                  {"k", s.k},
                  {"n", s.n},
                  {"orbit_norm", norm_json(s.orbit_norm)},
                  {"inverse_norm", s.inverse_norm ? norm_json(*s.inverse_norm) : Json("not-in-c0")},
                  {"identity_exact", s.identity_exact}});
      }
      human_ << to_string(p) << " criterion for " << r.operator_description << " with right inverse "
             << r.inverse_description << ", n_k = " << seq.multiplier << "k, k <= " << o.depth << ", basis bound "
             << o.basis_bound << ": " << (r.passed ? "PASS" : "FAIL") << '\n';
      for (const auto& cond : r.conditions) {
        Json fk = Json::array();
        for (const auto& v : cond.first_k) fk.push_back(v ? Json(*v) : Json(nullptr));
        emit(Json{{"record", "condition"},
                  {"property", to_string(p)},
                  {"name", cond.name},
                  {"holds", cond.holds},
                  {"first_k", fk},
                  {"detail", cond.detail}});
        human_ << "  " << (cond.holds ? "holds " : "fails ") << cond.name << ": " << cond.detail << '\n';
      }
      emit(Json{{"record", "criterion"},
                {"property", to_string(p)},
                {"operator", r.operator_description},
                {"inverse", r.inverse_description},
                {"multiplier", seq.multiplier},
                {"depth", o.depth},
                {"basis_bound", o.basis_bound},
                {"max_threshold", o.max_threshold},
                {"passed", r.passed}});
    }
    return kExitCompleted;
  }

  Ball ball_of(const FieldConfig& f, IndexDomain d, const BallSpec& b, const char* name) {
    if (!b.center || !b.radius) missing(std::string("command.") + name + ".center", "witness needs both balls");
    return Ball(vector_of(f, d, *b.center), NormExp::pow(*b.radius), b.closed.value_or(true));
  }

  int witness() {
    const FieldConfig f = field_of(spec_);
    const std::string target = spec_.command.target.value_or("transitivity");
    if (target == "scaling") return scaling(f);
    if (target != "transitivity") missing("command.target", "witness supports transitivity and scaling");
    const OperatorSpec op = build_operator(spec_);
    const IndexDomain d = domain_of(spec_);
    const Ball u = ball_of(f, d, spec_.command.u, "u");
    const Ball v = ball_of(f, d, spec_.command.v, "v");
    const std::int64_t n_max = capped(spec_.command.n_max.value_or(kDefaultWitnessN), opt_);
    const SubsequenceCertificate seq = sequence_for(op, Property::Hypercyclic);
    const auto w = transitivity_witness(op, right_inverse_of(op), u, v, n_max, seq);
    if (!w) {
      emit(Json{{"record", "not-found"}, {"n_max", n_max}, {"multiplier", seq.multiplier}});
      human_ << "no witness z = x + S^n y with n = " << seq.multiplier << "k <= " << n_max
             << " (inconclusive, not a disproof)\n";
      return kExitInconclusive;
    }
    emit(Json{{"record", "witness"},
              {"n", w->n},
              {"z", w->z.str()},
              {"image", w->image.str()},
              {"u", u.str()},
              {"v", v.str()},
              {"in_u", w->in_u},
              {"in_v", w->in_v}});
    human_ << "witness n = " << w->n << "\n  z = " << w->z.str() << "\n  T^n z = " << w->image.str()
           << "\n  z in U: " << (w->in_u ? "yes" : "no") << ", T^n z in V: " << (w->in_v ? "yes" : "no") << '\n';
    return kExitCompleted;
  }

  int scaling(const FieldConfig& f) {
    if (spec_.command.pairs.empty()) missing("command.pair", "scaling needs at least one pair");
    std::vector<std::pair<FinVector, FinVector>> pairs;
    for (const auto& [x, y] : spec_.command.pairs) {
      pairs.emplace_back(vector_of(f, IndexDomain::Integers, x), vector_of(f, IndexDomain::Integers, y));
    }
    human_ << "scaling sequence, |lambda_n| = " << f.prime() << "^-alpha_n\n";
    for (const auto& t : scaling_sequence(pairs)) {
      emit(Json{{"record", "scaling-term"},
                {"n", t.n},
                {"alpha", t.alpha},
                {"branch", to_string(t.branch)},
                {"scaled_x", norm_json(t.scaled_x)},
                {"scaled_y", norm_json(t.scaled_y)},
                {"bound", norm_json(t.bound)}});
      human_ << "  n=" << t.n << " alpha=" << t.alpha << " (" << to_string(t.branch) << ")  |l x| = "
             << norm_human(t.scaled_x, f.prime()) << "  |l^-1 y| = " << norm_human(t.scaled_y, f.prime()) << '\n';
    }
    return kExitCompleted;
  }

  int obstruct() {
    const FieldConfig f = field_of(spec_);
    std::string target;
    if (spec_.command.target) target = *spec_.command.target;
    else if (spec_.op.kind == OperatorKind::LambdaMu) target = "lambda-mu";
    else if (spec_.op.kind == OperatorKind::FiniteDim) target = "finite-dim";
    else missing("command.target", "obstruct needs a target: lambda-mu, lem3 or finite-dim");
    const auto& c = spec_.command;
    if (target == "lambda-mu" || target == "lem3") {
      if (spec_.op.kind != OperatorKind::LambdaMu) missing("operator.kind", "target needs kind = lambda-mu");
      const PadicScalar lambda = scalar_of(f, *spec_.op.lambda);
      const PadicScalar mu = scalar_of(f, *spec_.op.mu);
      if (target == "lem3") {
        Lem3Options o;
        o.k_max = c.k_max.value_or(o.k_max);
        o.n_max = capped(c.n_max.value_or(o.n_max), opt_);
        o.samples = c.samples.value_or(o.samples);
        o.seed = seed();
        const Lem3Report r = lem3_invariance_check(lambda, mu, o);
        emit(Json{{"record", "lem3"},
                  {"d", r.d},
                  {"k_max", o.k_max},
                  {"n_max", o.n_max},
                  {"samples_checked", r.samples_checked},
                  {"band_ok", r.band_ok},
                  {"domination_ok", r.domination_ok},
                  {"orbit_scaling_ok", r.orbit_scaling_ok},
                  {"first_coordinate_ok", r.first_coordinate_ok},
                  {"ball_disjoint_ok", r.ball_disjoint_ok},
                  {"passed", r.passed},
                  {"failures", r.failures}});
        human_ << "invariant set check, d = v(lambda) - v(mu) = " << r.d << ", " << r.samples_checked
               << " samples: " << (r.passed ? "PASS" : "FAIL") << '\n';
        for (const auto& s : r.failures) human_ << "  " << s << '\n';
        return kExitCompleted;
      }
      if (!c.vector) missing("command.vector", "obstruct needs a vector");
      const FinVector x = vector_of(f, domain_of(spec_), *c.vector);
      const ObstructionWitness w =
          obstruction_witness_lambda_mu(lambda, mu, x, capped(c.n_max.value_or(kDefaultObstructionN), opt_));
      for (const auto& s : w.steps) {
        emit(Json{{"record", "obstruction-step"},
                  {"n", s.n},
                  {"critical", norm_json(s.critical)},
                  {"expected", norm_json(s.expected)},
                  {"target", norm_json(s.target)},
                  {"identity_holds", s.identity_holds},
                  {"strict_holds", s.strict_holds}});
      }
      const bool lam = w.kase == ObstructionCase::LambdaDominates;
      emit(Json{{"record", "obstruction"},
                {"case", lam ? "lambda-dominates" : "mu-dominates"},
                {"critical_index", w.critical_index},
                {"target_index", w.target_index},
                {"n_max", w.n_max},
                {"certified", w.certified},
                {"distance_bound", w.distance_bound}});
      human_ << (lam ? "|lambda| >= |mu|" : "|mu| > |lambda|") << ", critical index " << w.critical_index
             << ", target e_" << w.target_index << ", n <= " << w.n_max << ": "
             << (w.certified ? "certified" : "NOT certified") << "\n  " << w.distance_bound << '\n';
      return kExitCompleted;
    }
    if (target == "finite-dim") {
      if (!c.det) missing("command.det", "finite-dim obstruction needs det");
      const FiniteDimReport r =
          finite_dim_obstruction(scalar_of(f, *c.det), capped(c.n_max.value_or(kDefaultFiniteDimN), opt_), seed());
      emit(Json{{"record", "finite-dim"},
                {"small_case", r.small_case},
                {"n_max", r.n_max},
                {"checks", r.checks},
                {"certified", r.certified},
                {"statement", r.statement}});
      human_ << r.statement << "\n  " << r.checks << " checks: " << (r.certified ? "certified" : "NOT certified")
             << '\n';
      return kExitCompleted;
    }
    missing("command.target", "obstruct supports lambda-mu, lem3 and finite-dim");
  }

  int selftest() {
    AcceptanceOptions o;
    if (opt_.seed || spec_.command.seed) o.seed = seed();
    bool all = true;
    for (const auto& r : run_acceptance(o)) {
      emit(Json{{"record", "acceptance"}, {"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
      human_ << format_result(r) << '\n';
      all = all && r.passed;
    }
    if (!all) throw Error(ErrorCode::HypothesisViolated, "acceptance suite failed");
    return kExitCompleted;
  }

  const ExperimentSpec& spec_;
  const RunOptions& opt_;
  std::ostringstream human_;
  std::ostringstream records_;
  int exit_ = kExitCompleted;
};

}  // namespace

OperatorSpec build_operator(const ExperimentSpec& spec) {
  const FieldConfig f = field_of(spec);
  const OperatorKind k = kind_of(spec);
  const auto& o = spec.op;
  const IndexDomain d = domain_of(spec);
  switch (k) {
    case OperatorKind::Identity: return Identity{};
    case OperatorKind::Scalar: return ScalarMul{scalar_of(f, *o.lambda)};
    case OperatorKind::LambdaMu: return LambdaMu(scalar_of(f, *o.lambda), scalar_of(f, *o.mu), d);
    case OperatorKind::RightInverse: return RightInverseLambdaMu(scalar_of(f, *o.lambda), scalar_of(f, *o.mu), d);
    case OperatorKind::FiniteDim: throw Error(ErrorCode::Unsupported, "finite-dim is described by its dimension only");
    default: break;
  }
  WeightModel w = weights_of(f, spec.weights, is_bilateral(k));
  if (spec.perturbation.present()) w = weight_sum(w, weights_of(f, spec.perturbation, is_bilateral(k)));
  switch (k) {
    case OperatorKind::UnilateralShift: return UnilateralBackwardShift(std::move(w));
    case OperatorKind::BilateralShift: return BilateralBackwardShift(std::move(w));
    case OperatorKind::ForwardShift: return ForwardShift(std::move(w));
    default: return ForwardShiftBilateral(std::move(w));
  }
}

RunOutput run(const ExperimentSpec& spec, const RunOptions& options) { return Runner(spec, options).run(); }

}  // namespace padyn::cli
