#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "skillgauge/errors.hpp"
#include "skillgauge/impact.hpp"
#include "skillgauge/presets.hpp"
#include "skillgauge/rng.hpp"

using namespace skillgauge;

TEST_CASE("boosted score formula") {
  CHECK(boosted_score(500, 0.05, 45) == doctest::Approx(520.0));  // 475 + max(25, 45)
  CHECK(boosted_score(500, 0.05, 10) == doctest::Approx(500.0));  // boost does not fire
  CHECK(boosted_score(500, 0.05, 25) == doctest::Approx(500.0));  // I = S*P boundary
  // Never below P.
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    const double p = 100 + 900 * rng.uniform();
    const double s = rng.uniform() / 11.0 + 1e-9;
    const double imp = 100 * rng.uniform();
    CHECK(boosted_score(p, s, imp) >= p - 1e-12);
  }
}

TEST_CASE("min share stays within the simplex bound") {
  const std::vector<double> alpha(11, 10.0);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const double v = sample_min_share(alpha, derive_seed(1, s));
    CHECK(v > 0.0);
    CHECK(v <= 1.0 / 11.0);
  }
}

namespace {

// Brute-force DirichletMin oracle built on the standard library: gamma draws
// via std::gamma_distribution, fully independent of the library sampler.
std::vector<double> oracle_min_shares(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::gamma_distribution<double> gamma(10.0, 1.0);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double draws[11];
    double total = 0.0;
    for (double& d : draws) {
      d = gamma(gen);
      total += d;
    }
    double lo = draws[0];
    for (double d : draws) lo = std::min(lo, d);
    out.push_back(lo / total);
  }
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) ++i; else ++j;
    const double fa = static_cast<double>(i) / a.size();
    const double fb = static_cast<double>(j) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

}  // namespace

TEST_CASE("min share distribution matches a brute-force oracle") {
  const std::vector<double> alpha(11, 10.0);
  const std::size_t n = 100000;
  std::vector<double> sample;
  sample.reserve(n);
  for (std::uint64_t s = 0; s < n; ++s) sample.push_back(sample_min_share(alpha, derive_seed(7, s)));
  const std::vector<double> oracle = oracle_min_shares(1000000, 424242);

  const double d = ks_statistic(sample, oracle);
  CHECK(d < 0.02);

  // Mean within a 3 SE band around the oracle mean.
  double m = 0, om = 0;
  for (double v : sample) m += v;
  for (double v : oracle) om += v;
  m /= sample.size();
  om /= oracle.size();
  double var = 0;
  for (double v : sample) var += (v - m) * (v - m);
  var /= (sample.size() - 1);
  CHECK(std::abs(m - om) < 3 * std::sqrt(var / sample.size()) + 3 * std::sqrt(var / oracle.size()));
}

TEST_CASE("impact model validation") {
  ImpactModel model = impact_preset("IID");
  CHECK(model.dirichlet_alpha.size() == 11);
  CHECK_NOTHROW(model.validate());
  model.dirichlet_alpha[3] = 0.0;
  CHECK_THROWS_AS(model.validate(), ConfigError);
  CHECK_THROWS_AS(impact_preset("nope"), ConfigError);
}

TEST_CASE("combo win probabilities form a distribution") {
  const ScoreModel teams = moment_match(team_preset("equi-mean", 0.4));
  const ImpactModel impact = impact_preset("IID");
  const ComboWinProbs pi = estimate_combo_win_probs(teams, impact, 100000, 19);
  REQUIRE(pi.n_teams == 4);
  REQUIRE(pi.n_impacts == 4);
  double total = 0.0;
  for (double p : pi.probs) {
    CHECK(p >= 0.0);
    total += p;
    // Full exchangeability: every cell near 1/16.
    CHECK(p == doctest::Approx(1.0 / 16).epsilon(0.16));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the strongest impact player carries the largest column mass") {
  const ScoreModel teams = moment_match(team_preset("unequal-mean", 0.4));
  const ComboWinProbs pi = estimate_combo_win_probs(teams, impact_preset("Different_mean"),
                                                    50000, 23);
  std::vector<double> col_sum(pi.n_impacts, 0.0);
  for (std::size_t t = 0; t < pi.n_teams; ++t)
    for (std::size_t j = 0; j < pi.n_impacts; ++j) col_sum[j] += pi.at(t, j);
  const std::size_t best =
      std::max_element(col_sum.begin(), col_sum.end()) - col_sum.begin();
  CHECK(best == pi.n_impacts - 1);  // mean-50 impact player
}

TEST_CASE("mean deviation arithmetic") {
  ImpactMetrics combo;
  combo.n_teams = 2;
  combo.n_impacts = 2;
  combo.mean_winnings = {12.5, 20.0, 5.0, 5.0};
  const std::vector<double> baseline = {12.5, 5.0};
  const std::vector<double> dev = mean_deviation(combo, baseline);
  CHECK(dev[0] == doctest::Approx(0.0));
  CHECK(dev[1] == doctest::Approx(7.5));
  CHECK(dev[2] == doctest::Approx(0.0));
  CHECK(dev[3] == doctest::Approx(0.0));
  CHECK_THROWS_AS(mean_deviation(combo, {1.0}), ConfigError);
}

TEST_CASE("impact contest loop is deterministic and thread-invariant") {
  const ScoreModel teams = moment_match(team_preset("unequal-mean", 0.4));
  const ImpactModel impact = impact_preset("Different_mean");
  const ComboWinProbs pi = estimate_combo_win_probs(teams, impact, 10000, 3);
  const AgentPopulation pop = AgentPopulation::make(500, 0.2, 0.04, 0.05, 16);
  ContestConfig cfg;
  cfg.n_users = 500;
  const ImpactMetrics one = run_impact_iterations(teams, impact, pi, pop, cfg, 300, 5, 1);
  const ImpactMetrics four = run_impact_iterations(teams, impact, pi, pop, cfg, 300, 5, 4);
  CHECK(one.mean_winnings == four.mean_winnings);
  CHECK(one.selection_ratio == four.selection_ratio);
}
