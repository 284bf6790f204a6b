#include "helpers.hpp"
#include "padyn/ops.hpp"

using namespace padyn;
using padyn::test::expect_error;
using padyn::test::q;
using padyn::test::vec;

namespace {

const FieldConfig F5(5);
constexpr auto N = IndexDomain::Naturals;
constexpr auto Z = IndexDomain::Integers;

WeightModel vals(IndexDomain d, std::vector<std::int64_t> fp, std::vector<std::int64_t> fq,
                 std::vector<std::int64_t> bp = {}, std::vector<std::int64_t> bq = {}) {
  return WeightModel::from_valuations(F5, d, fp, fq, bp, bq);
}

}  // namespace

TEST_CASE("weight lookup: prefix first, then the period cycles") {
  const WeightModel c = WeightModel::constant(N, q(F5, 3));
  CHECK(weight_at(c, 1) == q(F5, 3));
  CHECK(weight_at(c, 99) == q(F5, 3));
  const WeightModel w = WeightModel::unilateral(PeriodicSequence({q(F5, 2), q(F5, 7)}, {q(F5, 11)}));
  CHECK(weight_at(w, 1) == q(F5, 2));
  CHECK(weight_at(w, 2) == q(F5, 7));
  CHECK(weight_at(w, 3) == q(F5, 11));
  expect_error(ErrorCode::IndexOutOfDomain, [&] { (void)weight_at(w, 0); });
  const WeightModel b = WeightModel::bilateral(PeriodicSequence({}, {q(F5, 1)}), PeriodicSequence({}, {q(F5, 4)}));
  CHECK(weight_at(b, -7) == q(F5, 4));
  CHECK(weight_at(b, 0) == q(F5, 4));
  CHECK(b.product(1, 0) == PadicScalar::one(F5));
}

TEST_CASE("apply follows the defining formulas") {
  const PadicScalar lambda = q(F5, 5);
  const PadicScalar mu = q(F5, 1, 5);
  CHECK(padyn::apply(LambdaMu(lambda, mu, N), basis(F5, 2, N)) == vec(F5, N, {{1, mu}, {2, lambda}}));
  CHECK(padyn::apply(UnilateralBackwardShift(WeightModel::constant(N, q(F5, 2))), basis(F5, 1, N)).is_zero());
  const WeightModel a = vals(Z, {}, {-1, 2}, {3}, {0, 1});
  const BilateralBackwardShift ba(a);
  for (Index n = -6; n <= 6; ++n)
    CHECK(padyn::apply(ba, basis(F5, n, Z)) == vec(F5, Z, {{n - 1, weight_at(a, n)}}));
  const ForwardShift s(WeightModel::constant(N, q(F5, 5)));
  CHECK(padyn::apply(s, basis(F5, 4, N)) == vec(F5, N, {{5, q(F5, 1, 5)}}));
  expect_error(ErrorCode::DomainMismatch, [&] { (void)padyn::apply(ba, basis(F5, 1, N)); });
}

TEST_CASE("closed-form powers of lambda*I + mu*B") {
  const PadicScalar lambda = q(F5, 5);
  const PadicScalar mu = q(F5, 1, 5);
  const LambdaMu t(lambda, mu, N);
  const FinVector x = basis(F5, 3, N);
  CHECK(apply_power(t, 0, x) == x);
  const FinVector y = apply_power(t, 2, x);
  CHECK(y.at(1) == mu * mu);
  CHECK(y.at(1).valuation() == -2);
  CHECK(y.at(2) == q(F5, 2) * lambda * mu);
  CHECK(y.at(3) == lambda * lambda);
}

TEST_CASE("apply_power agrees with iterated apply and the rational oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 60; ++t) {
    const auto d = (t % 2) ? Z : N;
    const oracle::Q ql = padyn::test::random_q(rng, 5, -2, 2);
    const oracle::Q qm = padyn::test::random_q(rng, 5, -2, 2);
    const OperatorSpec op = LambdaMu(oracle::to_lib(F5, ql), oracle::to_lib(F5, qm), d);
    oracle::QVec qx;
    for (Index i = 1; i <= 8; ++i)
      if (rng() % 2) qx[d == Z ? i - 4 : i] = padyn::test::random_q(rng, 5, -3, 3);
    const FinVector x = oracle::to_lib(F5, d, qx);
    const std::int64_t n = static_cast<std::int64_t>(rng() % 12);
    FinVector it = x;
    for (std::int64_t k = 0; k < n; ++k) it = padyn::apply(op, it);
    const FinVector closed = apply_power(op, n, x);
    CHECK(closed == it);
    for (const auto& [i, s] : closed.entries()) CHECK(s.to_rational() == oracle::lambda_mu_power_coordinate(ql, qm, n, qx, i));
  }
}

TEST_CASE("shift powers use weight products") {
  const WeightModel a = vals(N, {2}, {-1, 1, 0});
  const UnilateralBackwardShift b(a);
  const FinVector e7 = basis(F5, 7, N);
  FinVector it = e7;
  for (int k = 0; k < 4; ++k) it = padyn::apply(b, it);
  CHECK(apply_power(b, 4, e7) == it);
  CHECK(apply_power(b, 4, e7) == vec(F5, N, {{3, a.product(3, 6)}}));
  CHECK(apply_power(b, 7, e7).is_zero());
}

TEST_CASE("right inverse") {
  const PadicScalar mu = q(F5, 1, 5);
  const TailedVector s = right_inverse_apply(PadicScalar::zero(F5), mu, TailedVector(basis(F5, 1, N)));
  CHECK(s == TailedVector(vec(F5, N, {{2, mu.inv()}})));
  expect_error(ErrorCode::DivisionByZero,
               [&] { (void)right_inverse_apply(q(F5, 1), PadicScalar::zero(F5), TailedVector(basis(F5, 1, N))); });

  // lambda != 0: S e_1 has the tail (1/mu)(-lambda/mu)^{i-2} for i >= 2.
  const PadicScalar lambda = q(F5, 3);
  const TailedVector t = right_inverse_apply(lambda, mu, TailedVector(basis(F5, 1, N)));
  CHECK(t.at(1).is_zero());
  for (Index i = 2; i < 10; ++i) CHECK(t.at(i) == mu.inv() * (-(lambda / mu)).pow(i - 2));

  std::mt19937_64 rng(9);
  for (int c = 0; c < 40; ++c) {
    const PadicScalar l = oracle::to_lib(F5, padyn::test::random_q(rng, 5, 1, 3));
    const PadicScalar m = oracle::to_lib(F5, padyn::test::random_q(rng, 5, -3, 0));
    FinVector x(F5, N);
    for (Index i = 1; i <= 6; ++i) x.set(i, oracle::to_lib(F5, padyn::test::random_q(rng, 5, -2, 2)));
    const TailedVector sx = right_inverse_apply(l, m, TailedVector(x));
    CHECK(padyn::apply(LambdaMu(l, m, N), sx) == TailedVector(x));
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 8);
    const TailedVector sn = right_inverse_power(l, m, n, x);
    CHECK(sup_norm(sn) <= m.norm().power(-n) * sup_norm(x));
    CHECK(apply_power(LambdaMu(l, m, N), n, sn) == TailedVector(x));
  }
}

TEST_CASE("conjugated weights") {
  const WeightModel a = vals(Z, {1}, {-1, 2}, {0, 3}, {-2});
  CHECK(conjugated_weight(a, 0) == PadicScalar::one(F5));
  CHECK(conjugated_weight(a, -1) == weight_at(a, 0));
  for (Index n = -8; n <= 8; ++n) CHECK(conjugated_weight(a, n - 1) / conjugated_weight(a, n) == weight_at(a, n));
  const WeightModel c = WeightModel::constant(Z, q(F5, 25));
  for (Index n = 0; n <= 5; ++n) CHECK(conjugated_weight(c, n).valuation() == -2 * n);
  expect_error(ErrorCode::IndexOutOfDomain, [] { (void)conjugated_weight(WeightModel::constant(N, q(F5, 1)), -1); });
}

TEST_CASE("operator norms") {
  CHECK(operator_norm(Identity{}) == NormExp::one());
  CHECK(operator_norm(LambdaMu(q(F5, 5), q(F5, 1, 5), N)) == NormExp::pow(1));
  CHECK(operator_norm(LambdaMu(q(F5, 1, 25), q(F5, 5), Z)) == NormExp::pow(2));
  CHECK(operator_norm(BilateralBackwardShift(WeightModel::constant(Z, q(F5, 1)))) == NormExp::one());
  CHECK(operator_norm(UnilateralBackwardShift(vals(N, {-4}, {1}))) == NormExp::pow(4));
}

TEST_CASE("linearity on random samples") {
  std::mt19937_64 rng(21);
  const WeightModel a = vals(Z, {}, {-1, 0}, {}, {1});
  const std::vector<OperatorSpec> ops = {Identity{}, ScalarMul{q(F5, 10)}, BilateralBackwardShift(a),
                                         ForwardShiftBilateral(a), LambdaMu(q(F5, 3), q(F5, 1, 5), Z)};
  for (const auto& op : ops) {
    for (int t = 0; t < 20; ++t) {
      FinVector x(F5, Z);
      FinVector y(F5, Z);
      for (Index i = -4; i <= 4; ++i) {
        if (rng() % 2) x.set(i, oracle::to_lib(F5, padyn::test::random_q(rng, 5, -2, 2)));
        if (rng() % 2) y.set(i, oracle::to_lib(F5, padyn::test::random_q(rng, 5, -2, 2)));
      }
      const PadicScalar al = oracle::to_lib(F5, padyn::test::random_q(rng, 5, -1, 1));
      const PadicScalar be = oracle::to_lib(F5, padyn::test::random_q(rng, 5, -1, 1));
      const FinVector lhs = padyn::apply(op, vec_add(vec_scale(al, x), vec_scale(be, y)));
      const FinVector rhs = vec_add(vec_scale(al, padyn::apply(op, x)), vec_scale(be, padyn::apply(op, y)));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("right inverses of the shift families") {
  const WeightModel a = vals(N, {}, {-1});
  CHECK(right_inverse_of(UnilateralBackwardShift(a)) == OperatorSpec(ForwardShift(a)));
  const OperatorSpec t = LambdaMu(q(F5, 5), q(F5, 1, 5), N);
  CHECK(right_inverse_of(t) == OperatorSpec(RightInverseLambdaMu(q(F5, 5), q(F5, 1, 5), N)));
  CHECK(right_inverse_of(Identity{}) == OperatorSpec(Identity{}));
  expect_error(ErrorCode::Unsupported, [&] { (void)right_inverse_of(ForwardShift(a)); });
  expect_error(ErrorCode::ParameterViolation, [&] {
    (void)weight_sum(WeightModel::constant(N, q(F5, 1)), WeightModel::constant(N, q(F5, -1)));
  });
}
