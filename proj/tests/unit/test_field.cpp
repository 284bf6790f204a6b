#include "helpers.hpp"
#include "padyn/field.hpp"

using namespace padyn;
using padyn::test::expect_error;
using padyn::test::q;

TEST_CASE("field config checks primality and precision") {
  CHECK_NOTHROW(FieldConfig(5, 8));
  expect_error(ErrorCode::InvalidField, [] { FieldConfig(4); });
  expect_error(ErrorCode::InvalidField, [] { FieldConfig(1); });
  expect_error(ErrorCode::InvalidField, [] { FieldConfig(7, 0); });
  CHECK(FieldConfig(5, 3).modulus() == 125);
}

TEST_CASE("norm exponents order and multiply") {
  CHECK(NormExp::zero() < NormExp::pow(-100));
  CHECK(NormExp::pow(-1) < NormExp::pow(2));
  CHECK(NormExp::pow(2) * NormExp::pow(-5) == NormExp::pow(-3));
  CHECK((NormExp::zero() * NormExp::pow(4)).is_zero());
  CHECK(NormExp::pow(3).power(4) == NormExp::pow(12));
  CHECK(max(NormExp::zero(), NormExp::pow(-2)) == NormExp::pow(-2));
  expect_error(ErrorCode::OutOfRange, [] { (void)NormExp::zero().exponent(); });
  expect_error(ErrorCode::DivisionByZero, [] { (void)(NormExp::one() / NormExp::zero()); });
}

TEST_CASE("addition carries valuation") {
  const FieldConfig f(5, 8);
  // 5 + 20 = 25
  const PadicScalar s = q(f, 5) + q(f, 20);
  CHECK(s.valuation() == 2);
  CHECK(s == q(f, 25));
  CHECK(q(f, 3, 7) + PadicScalar::zero(f) == q(f, 3, 7));
  // Unequal valuations: |2 + 125| = max(|2|, |125|) = 1.
  CHECK((q(f, 2) + q(f, 125)).norm() == NormExp::pow(0));
  CHECK((q(f, 3) - q(f, 3)).is_zero());
}

TEST_CASE("multiplicative laws") {
  const FieldConfig f(5, 8);
  const PadicScalar a = q(f, 50, 3);
  const PadicScalar b = q(f, 7, 125);
  CHECK((a * b).valuation() == a.valuation() + b.valuation());
  CHECK(a.inv().valuation() == -a.valuation());
  CHECK(a.pow(5).valuation() == 5 * a.valuation());
  CHECK(a * a.inv() == PadicScalar::one(f));
  CHECK(a.pow(0) == PadicScalar::one(f));
  expect_error(ErrorCode::DivisionByZero, [&] { (void)PadicScalar::zero(f).inv(); });
  expect_error(ErrorCode::DivisionByZero, [&] { (void)(a / PadicScalar::zero(f)); });
  expect_error(ErrorCode::FieldMismatch, [&] { (void)(a + q(FieldConfig(7), 1)); });
}

TEST_CASE("unit digits lie in [1, p^N) and are prime to p") {
  const FieldConfig f(5, 4);
  const PadicScalar a = q(f, -3, 7) * PadicScalar::power_of_p(f, 3);
  const mpz_class u = a.unit();
  CHECK(u >= 1);
  CHECK(u < f.modulus());
  CHECK(u % 5 != 0);
  // u * 7 == -3 modulo 5^4.
  CHECK(((u * 7 + 3) % f.modulus()) == 0);
  CHECK(a.valuation() == 3);
  expect_error(ErrorCode::OutOfRange, [&] { (void)PadicScalar::zero(f).unit(); });
}

TEST_CASE("binomials embed exactly") {
  const FieldConfig f(2);
  CHECK(binomial(6, 3, f) == q(f, 20));
  CHECK(binomial(6, 3, f).valuation() == 2);
  CHECK(binomial(9, 0, f) == PadicScalar::one(f));
  CHECK(valuation_of(mpz_class(96), 2) == 5);
}

TEST_CASE("field laws against the trial-division oracle") {
  std::mt19937_64 rng(11);
  for (unsigned p : {2U, 3U, 5U, 7U}) {
    const FieldConfig f(p);
    for (int i = 0; i < 300; ++i) {
      const auto qa = padyn::test::random_q(rng, p, -6, 6);
      const auto qb = padyn::test::random_q(rng, p, -6, 6);
      const PadicScalar a = oracle::to_lib(f, qa);
      const PadicScalar b = oracle::to_lib(f, qb);
      CHECK(a.valuation() == oracle::val(qa, p));
      CHECK((a * b).to_rational() == qa * qb);
      CHECK((a + b).valuation() == oracle::val(qa + qb, p));
      CHECK((a + b).norm() <= max(a.norm(), b.norm()));
      if (a.valuation() != b.valuation()) CHECK((a - b).norm() == max(a.norm(), b.norm()));
    }
  }
}

TEST_CASE("string forms") {
  const FieldConfig f(5);
  CHECK(q(f, -3, 25).str() == "-3/25");
  CHECK(NormExp::zero().str() == "0");
}
