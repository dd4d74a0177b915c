#include "skillgauge/impact.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "skillgauge/errors.hpp"
#include "skillgauge/parallel.hpp"
#include "skillgauge/rng.hpp"

namespace skillgauge {

namespace {
constexpr std::size_t kTeamSize = 11;
}

void ImpactModel::validate() const {
  points.validate();
  if (dirichlet_alpha.size() != kTeamSize)
    throw ConfigError("dirichlet concentration vector must have length 11");
  for (double a : dirichlet_alpha)
    if (!(a > 0.0)) throw ConfigError("dirichlet concentration entries must be positive");
}

ImpactModel ImpactModel::make(PointSpec pts, double dirichlet_concentration) {
  ImpactModel m;
  m.points = std::move(pts);
  m.dirichlet_alpha.assign(kTeamSize, dirichlet_concentration);
  m.validate();
  return m;
}

double sample_min_share(const std::vector<double>& alpha, std::uint64_t seed) {
  if (alpha.size() != kTeamSize)
    throw ConfigError("min-share concentration vector must have length 11");
  Rng rng(seed);
  const std::vector<double> x = rng.dirichlet(alpha);
  return *std::min_element(x.begin(), x.end());
}

double boosted_score(double team_points, double min_share, double impact_points) {
  return team_points * (1.0 - min_share) + std::max(min_share * team_points, impact_points);
}

namespace {

// One joint draw of boosted scores for all (team, impact) cells.
void draw_boosted(const ScoreModel& teams, const ScoreModel& impacts,
                  const std::vector<double>& dirichlet_alpha, Rng& rng,
                  std::vector<double>& boosted /* n*m, row-major */) {
  const std::size_t n = teams.size();
  const std::size_t m = impacts.size();
  Eigen::VectorXd z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = rng.normal();
  const Eigen::VectorXd team_pts = (teams.mu_log + teams.chol * z).array().exp();
  Eigen::VectorXd zi(m);
  for (std::size_t j = 0; j < m; ++j) zi[j] = rng.normal();
  const Eigen::VectorXd impact_pts = (impacts.mu_log + impacts.chol * zi).array().exp();
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<double> x = rng.dirichlet(dirichlet_alpha);
    const double share = *std::min_element(x.begin(), x.end());
    for (std::size_t j = 0; j < m; ++j)
      boosted[i * m + j] = boosted_score(team_pts[i], share, impact_pts[j]);
  }
}

std::vector<std::size_t> argmax_cells(const std::vector<double>& values) {
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> cells;
  for (std::size_t c = 0; c < values.size(); ++c)
    if (values[c] == best) cells.push_back(c);
  return cells;
}

}  // namespace

ComboWinProbs estimate_combo_win_probs(const ScoreModel& team_model, const ImpactModel& impact,
                                       std::size_t k, std::uint64_t seed, unsigned threads) {
  if (k < 1) throw ConfigError("sample count must be >= 1");
  impact.validate();
  const ScoreModel impact_scores = moment_match(impact.points);
  const std::size_t n = team_model.size();
  const std::size_t m = impact_scores.size();

  std::vector<std::vector<double>> shares(k);
  parallel_chunks(k, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> boosted(n * m);
    for (std::size_t s = begin; s < end; ++s) {
      Rng rng(derive_seed(seed, s));
      draw_boosted(team_model, impact_scores, impact.dirichlet_alpha, rng, boosted);
      const std::vector<std::size_t> winners = argmax_cells(boosted);
      std::vector<double> share(n * m, 0.0);
      for (std::size_t c : winners) share[c] = 1.0 / static_cast<double>(winners.size());
      shares[s] = std::move(share);
    }
  });

  ComboWinProbs out;
  out.n_teams = n;
  out.n_impacts = m;
  out.n_samples = k;
  out.probs.assign(n * m, 0.0);
  for (const auto& share : shares)
    for (std::size_t c = 0; c < n * m; ++c) out.probs[c] += share[c];
  for (double& p : out.probs) p /= static_cast<double>(k);
  return out;
}

ImpactMetrics run_impact_iterations(const ScoreModel& team_model, const ImpactModel& impact,
                                    const ComboWinProbs& pi, const AgentPopulation& pop,
                                    const ContestConfig& cfg, std::size_t n_iter,
                                    std::uint64_t seed, unsigned threads) {
  if (n_iter < 1) throw ConfigError("iteration count must be >= 1");
  impact.validate();
  const ScoreModel impact_scores = moment_match(impact.points);
  const std::size_t n = team_model.size();
  const std::size_t m = impact_scores.size();
  if (pi.n_teams != n || pi.n_impacts != m)
    throw ConfigError("combo win probabilities do not match models");
  const double pool = prize_pool(cfg);

  std::vector<std::vector<double>> payouts(n_iter);
  std::vector<std::vector<std::size_t>> ana_counts(n_iter), rnd_counts(n_iter);
  parallel_chunks(n_iter, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> boosted(n * m);
    for (std::size_t it = begin; it < end; ++it) {
      const std::uint64_t iter_seed = derive_seed(seed, it);
      const SelectionCounts sel =
          allocate_selections(pop, pi.probs, derive_seed(iter_seed, 0));

      Rng rng(derive_seed(iter_seed, 1));
      draw_boosted(team_model, impact_scores, impact.dirichlet_alpha, rng, boosted);
      const std::vector<std::size_t> winners = argmax_cells(boosted);

      const IterationOutcome outcome = settle(pool, winners, sel);
      std::vector<double> pay(n * m, 0.0);
      if (!outcome.rollover)
        for (std::size_t c : outcome.winner_teams) pay[c] = outcome.payout_per_winner;
      payouts[it] = std::move(pay);
      ana_counts[it] = sel.analytical;
      rnd_counts[it] = sel.random;
    }
  });

  ImpactMetrics out;
  out.n_teams = n;
  out.n_impacts = m;
  out.n_iterations = n_iter;
  out.mean_winnings.assign(n * m, 0.0);
  std::vector<std::size_t> ana_total(n * m, 0), rnd_total(n * m, 0);
  for (std::size_t it = 0; it < n_iter; ++it) {
    for (std::size_t c = 0; c < n * m; ++c) {
      out.mean_winnings[c] += payouts[it][c];
      ana_total[c] += ana_counts[it][c];
      rnd_total[c] += rnd_counts[it][c];
    }
  }
  for (double& w : out.mean_winnings) w /= static_cast<double>(n_iter);
  out.selection_ratio.resize(n * m);
  const std::size_t n_ana = pop.n_analytical() * n_iter;
  const std::size_t n_rnd = pop.n_random() * n_iter;
  for (std::size_t c = 0; c < n * m; ++c) {
    out.selection_ratio[c] =
        (n_ana > 0 && n_rnd > 0) ? selection_ratio(ana_total[c], rnd_total[c], n_ana, n_rnd)
                                 : std::nullopt;
  }
  return out;
}

std::vector<double> mean_deviation(const ImpactMetrics& combo,
                                   const std::vector<double>& baseline) {
  if (baseline.size() != combo.n_teams)
    throw ConfigError("baseline size does not match team count");
  std::vector<double> dev(combo.mean_winnings.size());
  for (std::size_t i = 0; i < combo.n_teams; ++i)
    for (std::size_t j = 0; j < combo.n_impacts; ++j)
      dev[i * combo.n_impacts + j] = combo.winnings_at(i, j) - baseline[i];
  return dev;
}

}  // namespace skillgauge
