#include <benchmark/benchmark.h>

#include "berezin/harness.hpp"
#include "berezin/linalg.hpp"

namespace {

using namespace berezin;

void BM_HermitianEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix h = gen_operator({OperatorKind::Hermitian, n}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(h));
}
BENCHMARK(BM_HermitianEigen)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_NumericalRadius(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix a = gen_operator({OperatorKind::General, n}, 2);
  for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(a));
}
BENCHMARK(BM_NumericalRadius)->Arg(4)->Arg(8)->Arg(16);

void BM_BerezinNumber(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto space = KernelSpace::hardy(n);
  const Matrix a = gen_operator({OperatorKind::General, n}, 3);
  RefineConfig refine;
  refine.enabled = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(berezin_number(space, a, default_plan(space, 400), refine));
}
BENCHMARK(BM_BerezinNumber)->Args({4, 0})->Args({4, 1})->Args({8, 0})->Args({8, 1});

void BM_Trial(benchmark::State& state, const char* id) {
  TrialConfig config;
  const Instance inst = make_instance(id, config, SpaceFamily::Hardy, 4, 0);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(inst, config));
}
BENCHMARK_CAPTURE(BM_Trial, eq111, "eq111");
BENCHMARK_CAPTURE(BM_Trial, eq5, "eq5");
BENCHMARK_CAPTURE(BM_Trial, heinz, "heinz");
BENCHMARK_CAPTURE(BM_Trial, full_cor, "full_cor");

}  // namespace

BENCHMARK_MAIN();
