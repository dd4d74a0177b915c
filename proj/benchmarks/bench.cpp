#include <benchmark/benchmark.h>

#include "skillgauge/agents.hpp"
#include "skillgauge/contest.hpp"
#include "skillgauge/impact.hpp"
#include "skillgauge/presets.hpp"
#include "skillgauge/rng.hpp"
#include "skillgauge/score_model.hpp"

using namespace skillgauge;

static void BM_SampleScores(benchmark::State& state) {
  const ScoreModel model = moment_match(team_preset("unequal-mean", 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_scores(model, state.range(0), 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleScores)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_WinProbs(benchmark::State& state) {
  const ScoreModel model = moment_match(team_preset("unequal-mean", 0.4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_win_probs(model, state.range(0), 1, state.range(1)));
  }
}
BENCHMARK(BM_WinProbs)->Args({100000, 1})->Args({100000, 4});

static void BM_ContestIterations(benchmark::State& state) {
  const ScoreModel model = moment_match(team_preset("unequal-mean", 0.4));
  const WinProbEstimate pi = estimate_win_probs(model, 10000, 1);
  const AgentPopulation pop = AgentPopulation::make(1000, 0.2, 0.04, 0.05, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_iterations(model, pi.probs, pop, ContestConfig{},
                                            state.range(0), 2, state.range(1)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ContestIterations)->Args({1000, 1})->Args({1000, 4});

static void BM_DirichletMin(benchmark::State& state) {
  const std::vector<double> alpha(11, 10.0);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_min_share(alpha, ++i));
  }
}
BENCHMARK(BM_DirichletMin);

static void BM_ImpactCombos(benchmark::State& state) {
  const ScoreModel model = moment_match(team_preset("unequal-mean", 0.4));
  const ImpactModel impact = impact_preset("Different_mean");
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_combo_win_probs(model, impact, state.range(0), 1));
  }
}
BENCHMARK(BM_ImpactCombos)->Arg(10000);

BENCHMARK_MAIN();
