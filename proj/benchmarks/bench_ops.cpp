#include <benchmark/benchmark.h>

#include "padyn/ops.hpp"

namespace {

using namespace padyn;

const FieldConfig F5(5);

FinVector dense(Index len, IndexDomain d) {
  FinVector x(F5, d);
  for (Index i = 1; i <= len; ++i) x.set(i, PadicScalar::from_rational(F5, 2 * i + 1, i + 3));
  return x;
}

void BM_LambdaMuPower(benchmark::State& state) {
  const OperatorSpec t = LambdaMu(PadicScalar::from_integer(F5, 5), PadicScalar::from_rational(F5, 1, 5), IndexDomain::Naturals);
  const FinVector x = dense(16, IndexDomain::Naturals);
  for (auto _ : state) benchmark::DoNotOptimize(apply_power(t, state.range(0), x));
}
BENCHMARK(BM_LambdaMuPower)->Arg(8)->Arg(64)->Arg(256);

void BM_LambdaMuIterated(benchmark::State& state) {
  const OperatorSpec t = LambdaMu(PadicScalar::from_integer(F5, 5), PadicScalar::from_rational(F5, 1, 5), IndexDomain::Naturals);
  const FinVector x = dense(16, IndexDomain::Naturals);
  for (auto _ : state) {
    FinVector y = x;
    for (std::int64_t k = 0; k < state.range(0); ++k) y = padyn::apply(t, y);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_LambdaMuIterated)->Arg(8)->Arg(64);

void BM_RightInversePower(benchmark::State& state) {
  const PadicScalar lambda = PadicScalar::from_integer(F5, 5);
  const PadicScalar mu = PadicScalar::from_rational(F5, 1, 5);
  const FinVector x = dense(8, IndexDomain::Naturals);
  for (auto _ : state) benchmark::DoNotOptimize(right_inverse_power(lambda, mu, state.range(0), x));
}
BENCHMARK(BM_RightInversePower)->Arg(4)->Arg(32)->Arg(128);

void BM_ShiftPower(benchmark::State& state) {
  const WeightModel a = WeightModel::from_valuations(F5, IndexDomain::Integers, {1}, {-1, 2, 0}, {}, {1, -1});
  const OperatorSpec b = BilateralBackwardShift(a);
  FinVector x(F5, IndexDomain::Integers);
  for (Index i = -8; i <= 8; ++i) x.set(i, PadicScalar::from_integer(F5, i == 0 ? 1 : i));
  for (auto _ : state) benchmark::DoNotOptimize(apply_power(b, state.range(0), x));
}
BENCHMARK(BM_ShiftPower)->Arg(16)->Arg(1024);

}  // namespace
