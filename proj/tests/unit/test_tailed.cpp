#include "helpers.hpp"
#include "padyn/tailed.hpp"

using namespace padyn;
using padyn::test::expect_error;
using padyn::test::q;

TEST_CASE("geometric tail values follow the binomial basis") {
  const FieldConfig f(5);
  // x_i = 5^i (1 + 2 C(i - 3, 1)) for i >= 3
  const GeometricTail t(3, q(f, 5), {{0, q(f, 1)}, {1, q(f, 2)}});
  CHECK(t.value(3) == q(f, 125));
  CHECK(t.value(5) == q(f, 3125 * 5));
  CHECK(t.min_degree() == 0);
  CHECK(t.degree() == 1);
  FinVector spill(f, IndexDomain::Naturals);
  const GeometricTail r = t.rebased(5, spill);
  CHECK(r.value(7) == t.value(7));
  CHECK(spill.at(3) == t.value(3));
  CHECK(spill.at(4) == t.value(4));
  expect_error(ErrorCode::OutOfRange, [&] { (void)t.value(2); });
  expect_error(ErrorCode::OutOfRange, [&] { GeometricTail(1, PadicScalar::zero(f), {}); });
}

TEST_CASE("tailed vectors compare across tail starts") {
  const FieldConfig f(5);
  const GeometricTail t(2, q(f, 5), {{0, q(f, 1)}});
  const TailedVector a(FinVector(f, IndexDomain::Naturals), t);
  FinVector spill(f, IndexDomain::Naturals);
  const GeometricTail later = t.rebased(6, spill);
  const TailedVector b(spill, later);
  CHECK(a == b);
  CHECK(a.at(4) == q(f, 625));
  CHECK(sup_norm(a) == NormExp::pow(-2));
  CHECK(vec_sub(a, b).finitely_supported());
  expect_error(ErrorCode::InfiniteSupport, [&] { (void)a.to_finite(); });
}

TEST_CASE("tails with non-decaying ratio are outside c0") {
  const FieldConfig f(5);
  const TailedVector a(FinVector(f, IndexDomain::Naturals), GeometricTail(1, q(f, 1, 5), {{0, q(f, 1)}}));
  expect_error(ErrorCode::NotInC0, [&] { (void)sup_norm(a); });
  const TailedVector b(FinVector(f, IndexDomain::Naturals), GeometricTail(1, q(f, 2), {{2, q(f, 1)}}));
  expect_error(ErrorCode::NotInC0, [&] { (void)sup_norm(b); });
  const TailedVector c(FinVector(f, IndexDomain::Naturals), GeometricTail(1, q(f, 5, 2), {{0, q(f, 1)}}));
  expect_error(ErrorCode::Unsupported, [&] { (void)vec_add(b, c); });
}

TEST_CASE("sup norm scans polynomial growth exactly") {
  const FieldConfig f(2);
  // x_i = 2^i * C(i - 1, 3): valuations pick up the binomial's 2-adic part.
  const TailedVector a(FinVector(f, IndexDomain::Naturals), GeometricTail(1, q(f, 2), {{3, q(f, 1, 64)}}));
  NormExp best = NormExp::zero();
  for (Index i = 1; i < 200; ++i) best = max(best, a.at(i).norm());
  CHECK(sup_norm(a) == best);
  CHECK(binomial_integer(5, 7) == 0);
  CHECK(binomial_integer(10, 3) == 120);
}
