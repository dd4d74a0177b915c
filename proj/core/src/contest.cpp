#include "skillgauge/contest.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "skillgauge/errors.hpp"
#include "skillgauge/parallel.hpp"
#include "skillgauge/rng.hpp"

namespace skillgauge {

void ContestConfig::validate() const {
  if (entry_fee < 0.0) throw ConfigError("entry fee must be >= 0");
  if (!(platform_cut_pct >= 0.0 && platform_cut_pct <= 100.0))
    throw ConfigError("platform cut must lie in [0, 100]");
  if (n_users == 0) throw ConfigError("contest needs at least one user");
}

double prize_pool(const ContestConfig& cfg) {
  cfg.validate();
  return cfg.entry_fee * static_cast<double>(cfg.n_users) * (100.0 - cfg.platform_cut_pct) /
         100.0;
}

IterationOutcome settle(double pool, const std::vector<std::size_t>& winner_teams,
                        const SelectionCounts& selections) {
  if (winner_teams.empty()) throw ConfigError("winner set must be non-empty");
  IterationOutcome out;
  out.winner_teams = winner_teams;
  out.selections = selections;
  std::size_t total_selectors = 0;
  for (std::size_t team : winner_teams) total_selectors += selections.total(team);
  if (total_selectors == 0) {
    out.rollover = true;
    out.payout_per_winner = 0.0;
  } else {
    out.payout_per_winner = pool / static_cast<double>(total_selectors);
  }
  return out;
}

std::optional<double> selection_ratio(std::size_t analytical_count, std::size_t random_count,
                                      std::size_t n_analytical, std::size_t n_random) {
  if (n_analytical == 0 || n_random == 0)
    throw ConfigError("selection ratio needs both population sizes > 0");
  if (random_count == 0) return std::nullopt;
  const double ana_rate = static_cast<double>(analytical_count) / static_cast<double>(n_analytical);
  const double rnd_rate = static_cast<double>(random_count) / static_cast<double>(n_random);
  return ana_rate / rnd_rate;
}

double mean_winnings(const std::vector<double>& payout_history) {
  if (payout_history.empty()) throw ConfigError("empty payout history");
  double s = 0.0;
  for (double p : payout_history) s += p;
  return s / static_cast<double>(payout_history.size());
}

MetricsTable run_iterations(const ScoreModel& model, const std::vector<double>& pi,
                            const AgentPopulation& pop, const ContestConfig& cfg,
                            std::size_t n_iter, std::uint64_t seed, unsigned threads) {
  if (n_iter < 1) throw ConfigError("iteration count must be >= 1");
  if (pi.size() != model.size()) throw ConfigError("pi size does not match model");
  const std::size_t n_teams = model.size();
  const double pool = prize_pool(cfg);

  // Per-iteration results, reduced sequentially for thread-count invariance.
  std::vector<std::vector<double>> payouts(n_iter);          // per-team selector payout
  std::vector<std::vector<std::size_t>> ana_counts(n_iter);  // per-team analytical picks
  std::vector<std::vector<std::size_t>> rnd_counts(n_iter);

  parallel_chunks(n_iter, threads, [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd z(n_teams);
    for (std::size_t it = begin; it < end; ++it) {
      const std::uint64_t iter_seed = derive_seed(seed, it);
      const SelectionCounts sel =
          allocate_selections(pop, pi, derive_seed(iter_seed, 0));

      Rng rng(derive_seed(iter_seed, 1));
      for (std::size_t i = 0; i < n_teams; ++i) z[i] = rng.normal();
      const Eigen::VectorXd logscore = model.mu_log + model.chol * z;
      const double best = logscore.maxCoeff();
      std::vector<std::size_t> winners;
      for (std::size_t i = 0; i < n_teams; ++i)
        if (logscore[i] == best) winners.push_back(i);

      const IterationOutcome outcome = settle(pool, winners, sel);
      std::vector<double> pay(n_teams, 0.0);
      if (!outcome.rollover)
        for (std::size_t w : outcome.winner_teams) pay[w] = outcome.payout_per_winner;
      payouts[it] = std::move(pay);
      ana_counts[it] = sel.analytical;
      rnd_counts[it] = sel.random;
    }
  });

  MetricsTable table;
  table.n_iterations = n_iter;
  table.mean_winnings.assign(n_teams, 0.0);
  std::vector<std::size_t> ana_total(n_teams, 0), rnd_total(n_teams, 0);
  for (std::size_t it = 0; it < n_iter; ++it) {
    for (std::size_t i = 0; i < n_teams; ++i) {
      table.mean_winnings[i] += payouts[it][i];
      ana_total[i] += ana_counts[it][i];
      rnd_total[i] += rnd_counts[it][i];
    }
  }
  for (double& w : table.mean_winnings) w /= static_cast<double>(n_iter);
  table.selection_ratio.resize(n_teams);
  const std::size_t n_ana = pop.n_analytical() * n_iter;
  const std::size_t n_rnd = pop.n_random() * n_iter;
  for (std::size_t i = 0; i < n_teams; ++i) {
    table.selection_ratio[i] =
        (n_ana > 0 && n_rnd > 0) ? selection_ratio(ana_total[i], rnd_total[i], n_ana, n_rnd)
                                 : std::nullopt;
  }
  return table;
}

}  // namespace skillgauge
