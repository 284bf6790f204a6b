#include "helpers.hpp"
#include "padyn/criteria.hpp"

using namespace padyn;
using padyn::test::expect_error;
using padyn::test::q;

namespace {

const FieldConfig F5(5);
constexpr auto N = IndexDomain::Naturals;
constexpr auto Z = IndexDomain::Integers;

WeightModel bil(std::vector<std::int64_t> fp, std::vector<std::int64_t> fq, std::vector<std::int64_t> bp,
                std::vector<std::int64_t> bq) {
  return WeightModel::from_valuations(F5, Z, fp, fq, bp, bq);
}

void check_shape(const Verdict& v) {
  if (v.yes()) {
    REQUIRE(v.certificate.has_value());
    CHECK(v.certificate->multiplier >= 1);
  } else {
    CHECK_FALSE(v.citation.empty());
  }
}

}  // namespace

TEST_CASE("valuation partial sums match brute force") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::int64_t> pre(rng() % 4);
    std::vector<std::int64_t> per(1 + rng() % 4);
    for (auto& v : pre) v = static_cast<std::int64_t>(rng() % 7) - 3;
    for (auto& v : per) v = static_cast<std::int64_t>(rng() % 7) - 3;
    const ValuationSums s(pre, per);
    std::int64_t acc = 0;
    const auto len = static_cast<std::int64_t>(per.size());
    for (std::int64_t n = 0; n < 60; ++n) {
      CHECK(s.sum(n) == acc);
      const std::int64_t dev = len * acc - s.period_sum() * n;
      CHECK(dev >= s.deviation_min());
      CHECK(dev <= s.deviation_max());
      acc += n < static_cast<std::int64_t>(pre.size()) ? pre[static_cast<std::size_t>(n)]
                                                       : per[static_cast<std::size_t>(n - static_cast<std::int64_t>(pre.size())) % per.size()];
    }
  }
}

TEST_CASE("bilateral deciders") {
  const WeightModel hc = bil({}, {-1}, {}, {1});
  CHECK(decide_bilateral_hypercyclic(hc).yes());
  CHECK(decide_bilateral_supercyclic(hc).yes());
  const WeightModel ones = bil({}, {0}, {}, {0});
  CHECK_FALSE(decide_bilateral_hypercyclic(ones).yes());
  CHECK_FALSE(decide_bilateral_supercyclic(ones).yes());
  // |a_n| = |a_{-n}|: symmetric norms.
  const WeightModel sym = bil({}, {-1, 2}, {0}, {2, -1});
  CHECK_FALSE(decide_bilateral_supercyclic(sym).yes());
  // Forward sums drift down, backward sums do not drift up: SC without HC.
  const WeightModel sc = bil({}, {-2}, {}, {-1});
  CHECK_FALSE(decide_bilateral_hypercyclic(sc).yes());
  CHECK(decide_bilateral_supercyclic(sc).yes());
  for (const auto& w : {hc, ones, sym, sc}) {
    check_shape(decide_bilateral_hypercyclic(w));
    check_shape(decide_bilateral_supercyclic(w));
  }
  expect_error(ErrorCode::WrongDomain, [] { (void)decide_bilateral_hypercyclic(WeightModel::constant(N, q(F5, 1))); });
}

TEST_CASE("supercyclicity ignores a common scalar factor") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::int64_t> fq(1 + rng() % 3);
    std::vector<std::int64_t> bq(1 + rng() % 3);
    for (auto& v : fq) v = static_cast<std::int64_t>(rng() % 5) - 2;
    for (auto& v : bq) v = static_cast<std::int64_t>(rng() % 5) - 2;
    const WeightModel w = bil({}, fq, {}, bq);
    const PadicScalar c = PadicScalar::power_of_p(F5, static_cast<std::int64_t>(rng() % 7) - 3);
    CHECK(decide_bilateral_supercyclic(w).answer == decide_bilateral_supercyclic(w.scaled(c)).answer);
  }
}

TEST_CASE("unilateral decider") {
  const WeightModel grow = WeightModel::from_valuations(F5, N, {}, {-1});
  const WeightModel flat = WeightModel::from_valuations(F5, N, {}, {0});
  CHECK(decide_unilateral(grow, Property::Hypercyclic).yes());
  CHECK_FALSE(decide_unilateral(flat, Property::Hypercyclic).yes());
  CHECK(decide_unilateral(flat, Property::Supercyclic).yes());
  CHECK(decide_unilateral(WeightModel::from_valuations(F5, N, {-9}, {3}), Property::Supercyclic).yes());
  check_shape(decide_unilateral(flat, Property::Hypercyclic));
  expect_error(ErrorCode::WrongDomain, [] { (void)decide_unilateral(bil({}, {0}, {}, {0}), Property::Hypercyclic); });
}

TEST_CASE("lambda*I + mu*B decider") {
  const Verdict v = decide_lambda_mu(q(F5, 5), q(F5, 1, 5), N, Property::Hypercyclic);
  CHECK(v.yes());
  CHECK(v.rule == Rule::LambdaMuN_HC);
  REQUIRE(v.certificate.has_value());
  for (int e = -3; e <= 3; ++e) {
    const PadicScalar mu = PadicScalar::power_of_p(F5, e);
    CHECK_FALSE(decide_lambda_mu(q(F5, 1), mu, N, Property::Hypercyclic).yes());
    for (int l = -3; l <= 3; ++l) {
      const PadicScalar lambda = PadicScalar::power_of_p(F5, l);
      CHECK_FALSE(decide_lambda_mu(lambda, mu, Z, Property::Supercyclic).yes());
      CHECK_FALSE(decide_lambda_mu(lambda, mu, Z, Property::Hypercyclic).yes());
      const bool sc = decide_lambda_mu(lambda, mu, N, Property::Supercyclic).yes();
      const bool hc = decide_lambda_mu(lambda, mu, N, Property::Hypercyclic).yes();
      CHECK(sc == (l > e));
      CHECK(hc == (l > 0 && e < 0));
      if (hc) CHECK(sc);
    }
  }
  CHECK(decide_lambda_mu(PadicScalar::zero(F5), q(F5, 1, 5), N, Property::Hypercyclic).yes());
}

TEST_CASE("finite dimension is never hypercyclic") {
  for (std::int64_t d : {1, 7}) {
    const Verdict v = decide_finite_dim(d);
    CHECK_FALSE(v.yes());
    CHECK(v.rule == Rule::FiniteDim);
    CHECK(v.obstruction.find("det") != std::string::npos);
  }
  expect_error(ErrorCode::ParameterViolation, [] { (void)decide_finite_dim(0); });
}

TEST_CASE("perturbation reduction") {
  const WeightModel a = WeightModel::from_valuations(F5, N, {}, {-1});
  const WeightModel b = WeightModel::from_valuations(F5, N, {}, {0});
  const WeightModel r = perturbation_reduce(a, b);
  for (Index n = 1; n < 20; ++n) CHECK(weight_at(r, n).valuation() == weight_at(a, n).valuation());
  expect_error(ErrorCode::PrecedenceViolation, [&] { (void)perturbation_reduce(a, a); });

  std::mt19937_64 rng(4);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::int64_t> af(1 + rng() % 3), ab(1 + rng() % 3), bf(1 + rng() % 2), bb(1 + rng() % 2);
    for (auto& v : af) v = static_cast<std::int64_t>(rng() % 5) - 2;
    for (auto& v : ab) v = static_cast<std::int64_t>(rng() % 5) - 2;
    for (auto& v : bf) v = 3 + static_cast<std::int64_t>(rng() % 3);
    for (auto& v : bb) v = 3 + static_cast<std::int64_t>(rng() % 3);
    const WeightModel wa = bil({}, af, {}, ab);
    const WeightModel wb = bil({}, bf, {}, bb);
    const WeightModel sum = weight_sum(wa, wb);
    for (Property p : {Property::Hypercyclic, Property::Supercyclic}) {
      const Verdict via = decide_perturbed(wa, wb, p);
      const Verdict direct = decide(BilateralBackwardShift(sum), p);
      CHECK(via.answer == direct.answer);
      CHECK(via.rule == Rule::PerturbationReduction);
    }
  }
}

TEST_CASE("dispatch, monotonicity and the norm sanity check") {
  std::mt19937_64 rng(13);
  std::vector<OperatorSpec> ops;
  for (int t = 0; t < 40; ++t) {
    std::vector<std::int64_t> f(1 + rng() % 3), b(1 + rng() % 3);
    for (auto& v : f) v = static_cast<std::int64_t>(rng() % 5) - 2;
    for (auto& v : b) v = static_cast<std::int64_t>(rng() % 5) - 2;
    ops.emplace_back(BilateralBackwardShift(bil({}, f, {}, b)));
    ops.emplace_back(UnilateralBackwardShift(WeightModel::from_valuations(F5, N, {}, f)));
    ops.emplace_back(LambdaMu(PadicScalar::power_of_p(F5, f[0]), PadicScalar::power_of_p(F5, b[0]), t % 2 ? N : Z));
  }
  for (const auto& op : ops) {
    const Verdict hc = decide(op, Property::Hypercyclic);
    const Verdict sc = decide(op, Property::Supercyclic);
    check_shape(hc);
    check_shape(sc);
    if (hc.yes()) {
      CHECK(sc.yes());
      CHECK(operator_norm(op) > NormExp::one());
    }
  }
  expect_error(ErrorCode::Unsupported, [] { (void)decide(Identity{}, Property::Hypercyclic); });
  expect_error(ErrorCode::Unsupported, [] { (void)decide(ScalarMul{q(F5, 5)}, Property::Supercyclic); });
}
