#include <benchmark/benchmark.h>

#include "padyn/dynamics.hpp"

namespace {

using namespace padyn;

const FieldConfig F5(5);

void BM_DecideBilateral(benchmark::State& state) {
  const WeightModel a = WeightModel::from_valuations(F5, IndexDomain::Integers, {3, -2}, {-1, 0, 1, -1}, {2}, {1, 0});
  for (auto _ : state) benchmark::DoNotOptimize(decide(BilateralBackwardShift(a), Property::Hypercyclic));
}
BENCHMARK(BM_DecideBilateral);

void BM_VerifyHcLambdaMu(benchmark::State& state) {
  const OperatorSpec t = LambdaMu(PadicScalar::from_integer(F5, 5), PadicScalar::from_rational(F5, 1, 5), IndexDomain::Naturals);
  const Verdict v = decide(t, Property::Hypercyclic);
  const CriterionOptions opts{state.range(0), state.range(0), 10};
  for (auto _ : state) benchmark::DoNotOptimize(verify_hc_criterion(t, right_inverse_of(t), *v.certificate, opts));
}
BENCHMARK(BM_VerifyHcLambdaMu)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_TransitivityWitness(benchmark::State& state) {
  const OperatorSpec t = LambdaMu(PadicScalar::from_integer(F5, 5), PadicScalar::from_rational(F5, 1, 5), IndexDomain::Naturals);
  const Ball u(basis(F5, 1, IndexDomain::Naturals), NormExp::pow(-state.range(0)));
  const Ball v(basis(F5, 2, IndexDomain::Naturals), NormExp::pow(-state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(transitivity_witness(t, right_inverse_of(t), u, v, 1000));
}
BENCHMARK(BM_TransitivityWitness)->Arg(3)->Arg(10)->Unit(benchmark::kMicrosecond);

}  // namespace
