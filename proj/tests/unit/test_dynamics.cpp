#include "helpers.hpp"
#include "padyn/dynamics.hpp"

using namespace padyn;
using padyn::test::expect_error;
using padyn::test::q;
using padyn::test::vec;

namespace {

const FieldConfig F5(5);
constexpr auto N = IndexDomain::Naturals;
constexpr auto Z = IndexDomain::Integers;

CriterionOptions small() { return CriterionOptions{8, 24, 10}; }

}  // namespace

TEST_CASE("orbits") {
  const FinVector x = vec(F5, N, {{1, q(F5, 3)}, {4, q(F5, 1, 5)}});
  for (const auto& pt : orbit(Identity{}, x, 5)) CHECK(pt.x == x);

  const auto o = orbit(UnilateralBackwardShift(WeightModel::constant(N, q(F5, 1))), basis(F5, 3, N), 5);
  REQUIRE(o.size() == 6);
  CHECK(o[1].x == basis(F5, 2, N));
  CHECK(o[2].x == basis(F5, 1, N));
  for (std::size_t n = 3; n < 6; ++n) CHECK(o[n].norm.is_zero());

  // |lambda| >= |mu|: the last coordinate grows as |lambda|^n.
  const PadicScalar lambda = q(F5, 1, 5);
  const auto g = orbit(LambdaMu(lambda, q(F5, 1), N), x, 12);
  for (const auto& pt : g) CHECK(pt.x.at(4).norm() == lambda.norm().power(pt.n) * x.at(4).norm());
  expect_error(ErrorCode::OutOfRange, [&] { (void)orbit(Identity{}, x, -1); });
}

TEST_CASE("hypercyclic criterion examples") {
  const WeightModel a = WeightModel::from_valuations(F5, N, {}, {-1});
  const OperatorSpec b = UnilateralBackwardShift(a);
  CHECK(verify_hc_criterion(b, right_inverse_of(b), SubsequenceCertificate{}, small()).passed);

  const OperatorSpec t = LambdaMu(q(F5, 5), q(F5, 1, 5), N);
  CHECK(verify_hc_criterion(t, right_inverse_of(t), SubsequenceCertificate{}, small()).passed);

  const OperatorSpec bad = LambdaMu(q(F5, 1), q(F5, 1, 5), N);
  const CriterionReport r = verify_hc_criterion(bad, right_inverse_of(bad), SubsequenceCertificate{}, small());
  CHECK_FALSE(r.passed);
  REQUIRE_FALSE(r.conditions.empty());
  CHECK_FALSE(r.conditions.front().holds);
  for (const auto& s : r.steps) CHECK(s.identity_exact);

  expect_error(ErrorCode::Unsupported, [&] { (void)right_inverse_of(right_inverse_of(b)); });
}

TEST_CASE("supercyclic criterion examples") {
  const WeightModel a = WeightModel::from_valuations(F5, N, {2}, {1, 0});
  const OperatorSpec b = UnilateralBackwardShift(a);
  CHECK(verify_sc_criterion(b, right_inverse_of(b), SubsequenceCertificate{}, small()).passed);

  const OperatorSpec t = LambdaMu(q(F5, 1, 5), q(F5, 1, 25), N);
  CHECK(verify_sc_criterion(t, right_inverse_of(t), SubsequenceCertificate{}, small()).passed);
  CHECK_FALSE(verify_hc_criterion(t, right_inverse_of(t), SubsequenceCertificate{}, small()).passed);

  const OperatorSpec bad = LambdaMu(q(F5, 1, 5), q(F5, 1, 5), N);
  CHECK_FALSE(verify_sc_criterion(bad, right_inverse_of(bad), SubsequenceCertificate{}, small()).passed);
}

TEST_CASE("criterion agrees with the decider on a lambda/mu grid") {
  for (int l = -2; l <= 2; ++l) {
    for (int m = -2; m <= 2; ++m) {
      const OperatorSpec t = LambdaMu(PadicScalar::power_of_p(F5, l), PadicScalar::power_of_p(F5, m), N);
      for (Property p : {Property::Hypercyclic, Property::Supercyclic}) {
        const Verdict v = decide(t, p);
        const SubsequenceCertificate c = v.certificate.value_or(SubsequenceCertificate{});
        const CriterionReport r = p == Property::Hypercyclic ? verify_hc_criterion(t, right_inverse_of(t), c, small())
                                                             : verify_sc_criterion(t, right_inverse_of(t), c, small());
        CHECK_MESSAGE(r.passed == v.yes(), "l=" << l << " m=" << m << " " << to_string(p));
      }
    }
  }
}

TEST_CASE("transitivity witnesses") {
  const OperatorSpec t = LambdaMu(q(F5, 5), q(F5, 1, 5), N);
  const OperatorSpec s = right_inverse_of(t);
  const Ball zero(FinVector(F5, N), NormExp::one());
  const auto w0 = transitivity_witness(t, s, zero, zero, 10);
  REQUIRE(w0.has_value());
  CHECK(w0->n == 0);
  CHECK(w0->z == TailedVector(FinVector(F5, N)));

  const Ball u(basis(F5, 1, N), NormExp::pow(-3));
  const Ball v(basis(F5, 2, N), NormExp::pow(-3));
  const auto w = transitivity_witness(t, s, u, v, 200);
  REQUIRE(w.has_value());
  CHECK(w->in_u);
  CHECK(w->in_v);
  // Independent recomputation.
  CHECK(ball_contains(u, w->z));
  CHECK(ball_contains(v, apply_power(t, w->n, w->z)));

  const Ball u1(basis(F5, 1, N), NormExp::pow(-1));
  const Ball v1(basis(F5, 2, N), NormExp::pow(-1));
  CHECK_FALSE(transitivity_witness(Identity{}, Identity{}, u1, v1, 50).has_value());
}

TEST_CASE("scaling sequence branches") {
  std::vector<std::pair<FinVector, FinVector>> pairs;
  for (Index n = 1; n <= 30; ++n) pairs.emplace_back(vec(F5, Z, {{0, PadicScalar::power_of_p(F5, n)}}), basis(F5, 1, Z));
  const auto terms = scaling_sequence(pairs);
  REQUIRE(terms.size() == pairs.size());
  for (const auto& t : terms) {
    CHECK(t.branch == ScalingBranch::BothNonzero);
    const NormExp cap = NormExp::pow(-(t.n / 2) + 1);
    CHECK(t.scaled_x <= cap);
    CHECK(t.scaled_y <= cap);
    CHECK(max(t.scaled_x, t.scaled_y) <= t.bound);
  }

  const FinVector zero(F5, Z);
  std::vector<std::pair<FinVector, FinVector>> mixed = {{zero, zero},
                                                         {zero, basis(F5, 2, Z)},
                                                         {vec(F5, Z, {{0, q(F5, 25)}}), zero},
                                                         {zero, zero}};
  const auto m = scaling_sequence(mixed);
  CHECK(m[0].branch == ScalingBranch::BothZero);
  CHECK(m[0].alpha == 0);
  CHECK(m[1].branch == ScalingBranch::OnlyYNonzero);
  CHECK(m[2].branch == ScalingBranch::OnlyXNonzero);

  std::vector<std::pair<FinVector, FinVector>> grow;
  for (Index n = 1; n <= 10; ++n) grow.emplace_back(vec(F5, Z, {{0, PadicScalar::power_of_p(F5, -n)}}), basis(F5, 1, Z));
  expect_error(ErrorCode::HypothesisViolated, [&] { (void)scaling_sequence(grow); });
}

TEST_CASE("norm obstructions for lambda*I + mu*B on c0(Z)") {
  const auto w = obstruction_witness_lambda_mu(q(F5, 1), q(F5, 5), basis(F5, 0, Z), 50);
  CHECK(w.kase == ObstructionCase::LambdaDominates);
  CHECK(w.critical_index == 0);
  CHECK(w.certified);
  for (const auto& s : w.steps) CHECK(s.critical == NormExp::one());

  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    FinVector x(F5, Z);
    for (Index i = -3; i <= 3; ++i)
      if (rng() % 2) x.set(i, oracle::to_lib(F5, padyn::test::random_q(rng, 5, -2, 2)));
    if (x.is_zero()) x.set(0, q(F5, 1));
    CHECK(obstruction_witness_lambda_mu(q(F5, 1), q(F5, 1), x, 40).certified);
    const auto md = obstruction_witness_lambda_mu(q(F5, 1, 1), q(F5, 1, 5), x, 40);
    CHECK(md.certified);
    const auto mu_dom = obstruction_witness_lambda_mu(q(F5, 5), q(F5, 1, 5), x, 40);
    CHECK(mu_dom.kase == ObstructionCase::MuDominates);
    CHECK(mu_dom.certified);
    for (const auto& s : mu_dom.steps) CHECK(s.critical == s.expected);
  }
  expect_error(ErrorCode::ZeroVector,
               [] { (void)obstruction_witness_lambda_mu(q(F5, 1), q(F5, 1), FinVector(F5, Z), 5); });
}

TEST_CASE("invariant band argument") {
  const Lem3Report r = lem3_invariance_check(q(F5, 1), q(F5, 1, 5));
  CHECK(r.passed);
  CHECK(r.d == 1);
  CHECK(r.first_coordinate_ok);
  CHECK(r.samples_checked > 0);
  expect_error(ErrorCode::ParameterViolation, [] { (void)lem3_invariance_check(q(F5, 5), q(F5, 1, 5)); });
  expect_error(ErrorCode::ParameterViolation, [] { (void)lem3_invariance_check(q(F5, 1, 5), q(F5, 1)); });
}

TEST_CASE("finite-dimensional obstruction") {
  for (const PadicScalar& a : {q(F5, 2), q(F5, 5), q(F5, 1, 5)}) {
    const FiniteDimReport r = finite_dim_obstruction(a, 20, 3);
    CHECK(r.certified);
    CHECK(r.small_case == (a.norm() <= NormExp::one()));
    CHECK(r.checks > 0);
  }
  expect_error(ErrorCode::ZeroScalar, [] { (void)finite_dim_obstruction(PadicScalar::zero(F5)); });
}
