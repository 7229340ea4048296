#include <benchmark/benchmark.h>

#include "phaselab/commutator.hpp"
#include "phaselab/povm.hpp"
#include "phaselab/weyl.hpp"

using namespace phaselab;

static void BM_PhaseEigen(benchmark::State& state) {
  const auto phi = phase_operator(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigen(phi));
}
BENCHMARK(BM_PhaseEigen)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_PhiApplyExact(benchmark::State& state) {
  const auto f = density_witness(100).vector;
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phi_apply_exact(f, d));
}
BENCHMARK(BM_PhiApplyExact)->Arg(512)->Arg(4096);

static void BM_HeisenbergResiduals(benchmark::State& state) {
  const std::vector<std::size_t> dims{64, 512, 4096};
  const auto f = CoeffVec::basis(0) + CoeffVec::basis(3);
  for (auto _ : state) benchmark::DoNotOptimize(heisenberg_residuals(f, dims));
}
BENCHMARK(BM_HeisenbergResiduals);

static void BM_WeylDefect(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weyl_defect(1.0, 1.0, d));
}
BENCHMARK(BM_WeylDefect)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_PovmElement(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(povm_element(Arc(0.0, kPi / 2), d));
}
BENCHMARK(BM_PovmElement)->Arg(64)->Arg(256);
BENCHMARK_MAIN();
