#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "skillgauge/contest.hpp"
#include "skillgauge/errors.hpp"
#include "skillgauge/presets.hpp"
#include "skillgauge/rng.hpp"

using namespace skillgauge;

TEST_CASE("prize pool nets out the platform cut") {
  ContestConfig cfg;
  cfg.entry_fee = 25;
  cfg.platform_cut_pct = 20;
  cfg.n_users = 1000;
  CHECK(prize_pool(cfg) == doctest::Approx(20000.0));
  cfg.platform_cut_pct = 0;
  CHECK(prize_pool(cfg) == doctest::Approx(25000.0));
}

TEST_CASE("settlement splits the pool equally among winning selectors") {
  SelectionCounts sel;
  sel.analytical = {10, 30, 0, 0};
  sel.random = {10, 10, 20, 20};
  const IterationOutcome out = settle(20000.0, {1}, sel);
  CHECK_FALSE(out.rollover);
  CHECK(out.payout_per_winner == doctest::Approx(500.0));  // 20000 / 40
}

TEST_CASE("zero winning selectors roll the pool over") {
  SelectionCounts sel;
  sel.analytical = {10, 0};
  sel.random = {10, 0};
  const IterationOutcome out = settle(20000.0, {1}, sel);
  CHECK(out.rollover);
  CHECK(out.payout_per_winner == 0.0);
}

TEST_CASE("ties split the pool across all tied teams' selectors") {
  SelectionCounts sel;
  sel.analytical = {5, 10, 0};
  sel.random = {5, 5, 10};
  // Teams 0 and 1 tie: 10 + 15 = 25 selectors share the whole pool.
  const IterationOutcome out = settle(25000.0, {0, 1}, sel);
  CHECK(out.payout_per_winner == doctest::Approx(1000.0));
  // Conservation: winners' payouts exhaust the pool.
  CHECK(out.payout_per_winner * 25 == doctest::Approx(25000.0));
}

TEST_CASE("selection ratio formula and the undefined case") {
  // (20/100) / (10/100) = 2.
  CHECK(selection_ratio(20, 10, 100, 100).value() == doctest::Approx(2.0));
  // Population-normalized: analytical rate 20/200, random rate 10/100.
  CHECK(selection_ratio(20, 10, 200, 100).value() == doctest::Approx(1.0));
  CHECK_FALSE(selection_ratio(20, 0, 100, 100).has_value());
}

TEST_CASE("mean winnings includes the zero iterations") {
  // Two wins of 50 over 8 iterations -> 12.5.
  const std::vector<double> history = {0, 0, 50, 0, 0, 50, 0, 0};
  CHECK(mean_winnings(history) == doctest::Approx(12.5));
  CHECK(mean_winnings({0, 0, 0}) == 0.0);
}

TEST_CASE("full contest run conserves money and favors the strong team") {
  const PointSpec spec = team_preset("unequal-mean", 0.4);
  const ScoreModel model = moment_match(spec);
  const WinProbEstimate pi = estimate_win_probs(model, 20000, 3);
  const AgentPopulation pop = AgentPopulation::make(1000, 0.2, 0.04, 0.05, 4);
  ContestConfig cfg;
  const std::size_t iters = 2000;
  const MetricsTable metrics = run_iterations(model, pi.probs, pop, cfg, iters, 11);

  REQUIRE(metrics.mean_winnings.size() == 4);
  CHECK(metrics.n_iterations == iters);

  // Team 4 (largest mean) should attract analytical users disproportionately.
  REQUIRE(metrics.selection_ratio[3].has_value());
  CHECK(*metrics.selection_ratio[3] > 1.0);
  CHECK(*metrics.selection_ratio[0] < 1.0);

  // Money conservation in expectation: total per-user winnings time N users
  // equals the pool minus any rollover mass, so it cannot exceed the pool.
  double total = 0.0;
  for (std::size_t t = 0; t < 4; ++t) {
    // mean_winnings is per selector of team t averaged over iterations where
    // selector counts vary; aggregate conservation is asserted exactly per
    // iteration inside settle (see tie test), here we sanity-bound it.
    CHECK(metrics.mean_winnings[t] >= 0.0);
    total += metrics.mean_winnings[t];
  }
  CHECK(total > 0.0);
}

TEST_CASE("per-iteration conservation holds exactly") {
  ContestConfig cfg;
  const double pool = prize_pool(cfg);
  Rng rng(99);
  for (std::size_t trial = 0; trial < 500; ++trial) {
    SelectionCounts sel;
    sel.analytical.assign(4, 0);
    sel.random.assign(4, 0);
    for (std::size_t u = 0; u < 100; ++u) ++sel.analytical[rng.uniform_index(4)];
    for (std::size_t u = 0; u < 100; ++u) ++sel.random[rng.uniform_index(4)];
    const std::size_t winner = rng.uniform_index(4);
    const IterationOutcome out = settle(pool, {winner}, sel);
    if (!out.rollover) {
      const double paid = out.payout_per_winner * static_cast<double>(sel.total(winner));
      CHECK(std::abs(paid - pool) / pool <= 1e-6);
    }
  }
}

TEST_CASE("run_iterations is invariant to the worker count") {
  const ScoreModel model = moment_match(team_preset("equi-mean", 0.4));
  const WinProbEstimate pi = estimate_win_probs(model, 5000, 2);
  const AgentPopulation pop = AgentPopulation::make(200, 0.2, 0.04, 0.05, 4);
  ContestConfig cfg;
  cfg.n_users = 200;
  const MetricsTable one = run_iterations(model, pi.probs, pop, cfg, 500, 17, 1);
  const MetricsTable four = run_iterations(model, pi.probs, pop, cfg, 500, 17, 4);
  for (std::size_t t = 0; t < 4; ++t) {
    CHECK(one.mean_winnings[t] == four.mean_winnings[t]);
    CHECK(one.selection_ratio[t] == four.selection_ratio[t]);
  }
}

TEST_CASE("config validation") {
  ContestConfig cfg;
  cfg.entry_fee = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.entry_fee = 25;
  cfg.platform_cut_pct = 120;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.platform_cut_pct = 20;
  cfg.n_users = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
