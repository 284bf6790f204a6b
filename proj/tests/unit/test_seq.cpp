#include "helpers.hpp"
#include "padyn/seq.hpp"

using namespace padyn;
using padyn::test::expect_error;
using padyn::test::q;
using padyn::test::vec;

TEST_CASE("finite vectors keep only nonzero entries") {
  const FieldConfig f(5);
  FinVector x(f, IndexDomain::Naturals);
  x.set(3, q(f, 2));
  x.set(4, PadicScalar::zero(f));
  CHECK(x.support_size() == 1);
  x.accumulate(3, q(f, -2));
  CHECK(x.is_zero());
  CHECK(x.str() == "0");
  expect_error(ErrorCode::IndexOutOfDomain, [&] { x.set(0, q(f, 1)); });
  expect_error(ErrorCode::ZeroVector, [&] { (void)x.min_index(); });
}

TEST_CASE("sup norm, distance and balls") {
  const FieldConfig f(5);
  const auto d = IndexDomain::Integers;
  const FinVector x = vec(f, d, {{-1, q(f, 1, 5)}, {2, q(f, 25)}});
  CHECK(sup_norm(x) == NormExp::pow(1));
  CHECK(sup_norm(FinVector(f, d)).is_zero());
  const FinVector e2 = basis(f, 2, d);
  CHECK(dist(x, e2) == NormExp::pow(1));
  CHECK(vec_sub(x, x).is_zero());
  CHECK(vec_scale(q(f, 5), x) == vec(f, d, {{-1, q(f, 1)}, {2, q(f, 125)}}));

  const Ball closed(e2, NormExp::pow(0), true);
  const Ball open(e2, NormExp::pow(0), false);
  const FinVector near = vec(f, d, {{2, q(f, 1)}, {7, q(f, 3)}});
  CHECK(ball_contains(closed, near));
  CHECK_FALSE(ball_contains(open, near));
  CHECK(ball_contains(open, vec(f, d, {{2, q(f, 6)}})));
  expect_error(ErrorCode::OutOfRange, [&] { Ball(e2, NormExp::zero()); });
  expect_error(ErrorCode::DomainMismatch, [&] { (void)vec_add(e2, basis(f, 2, IndexDomain::Naturals)); });
}

TEST_CASE("linear operations are exact") {
  std::mt19937_64 rng(3);
  const FieldConfig f(3);
  for (int t = 0; t < 50; ++t) {
    FinVector x(f, IndexDomain::Naturals);
    FinVector y(f, IndexDomain::Naturals);
    for (Index i = 1; i <= 6; ++i) {
      x.set(i, oracle::to_lib(f, padyn::test::random_q(rng, 3, -2, 2)));
      y.set(i + 2, oracle::to_lib(f, padyn::test::random_q(rng, 3, -2, 2)));
    }
    CHECK(vec_sub(vec_add(x, y), y) == x);
    CHECK(sup_norm(vec_add(x, y)) <= max(sup_norm(x), sup_norm(y)));
  }
}
