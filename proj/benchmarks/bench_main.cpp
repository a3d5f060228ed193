#include <numbers>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "twoatom/couplings.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/entanglement.hpp"
#include "twoatom/runner.hpp"

using namespace twoatom;

namespace {

std::vector<BlockState> sample_states(std::size_t n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<BlockState> out;
  out.reserve(n);
  while (out.size() < n) {
    BlockState b;
    b.r11 = u(rng);
    b.r22 = u(rng);
    b.r33 = u(rng);
    b.r44 = u(rng);
    const double tr = b.trace();
    b.r11 /= tr;
    b.r22 /= tr;
    b.r33 /= tr;
    b.r44 /= tr;
    b.r12 = std::polar(u(rng) * std::sqrt(b.r11 * b.r22), 6.28 * u(rng));
    b.r34 = std::polar(u(rng) * std::sqrt(b.r33 * b.r44), 6.28 * u(rng));
    out.push_back(b);
  }
  return out;
}

const AtomPairParams kPair = AtomPairParams::from_rates(rates_from_geometry({std::numbers::pi / 6.0, 0.0}));

CollectiveState atom1_excited() {
  BlockState b;
  b.r44 = 1.0;
  return to_collective(b);
}

void BM_Couplings(benchmark::State& state) {
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(rates_from_geometry({x, 0.3}));
    x = x < 10.0 ? x + 0.01 : 0.5;
  }
}
BENCHMARK(BM_Couplings);

void BM_ConcurrenceClosedForm(benchmark::State& state) {
  const auto states = sample_states(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(states[i++ & 1023]));
  }
}
BENCHMARK(BM_ConcurrenceClosedForm);

void BM_ConcurrenceGeneric(benchmark::State& state) {
  const auto states = sample_states(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto m = DensityMatrix4::from_block(states[i++ & 1023]);
    benchmark::DoNotOptimize(wootters_generic(m));
    benchmark::DoNotOptimize(negativity_generic(m));
  }
}
BENCHMARK(BM_ConcurrenceGeneric);

void BM_AnalyticTrajectory(benchmark::State& state) {
  const auto times = TimeGrid{0.0, 3.0, 3000}.times();
  for (auto _ : state) {
    for (double t : times) benchmark::DoNotOptimize(evolve_analytic(atom1_excited(), kPair, t));
  }
}
BENCHMARK(BM_AnalyticTrajectory)->Unit(benchmark::kMicrosecond);

void BM_BlockOde(benchmark::State& state) {
  auto p = kPair;
  p.delta = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_block_ode(atom1_excited(), p, {0.0, 3.0, 3000}));
  }
}
BENCHMARK(BM_BlockOde)->Arg(0)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_FullMaster(benchmark::State& state) {
  const auto m0 = DensityMatrix4::from_block(from_collective(atom1_excited()));
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_full_master(m0, kPair, {0.0, 3.0, 3000}));
  }
}
BENCHMARK(BM_FullMaster)->Unit(benchmark::kMillisecond);

void BM_FigureScenario(benchmark::State& state) {
  const auto s = figure_scenario(Figure::kFig5);
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s));
}
BENCHMARK(BM_FigureScenario)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
