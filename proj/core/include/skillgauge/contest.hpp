#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skillgauge/agents.hpp"
#include "skillgauge/score_model.hpp"

namespace skillgauge {

struct ContestConfig {
  double entry_fee = 25.0;
  double platform_cut_pct = 20.0;
  std::size_t n_users = 1000;

  void validate() const;
};

/// One settled contest iteration. payout_per_winner is the equal share each
/// selector of a winning team receives; rollover marks the degenerate case
/// where no one selected a winning team.
struct IterationOutcome {
  std::vector<std::size_t> winner_teams;
  SelectionCounts selections;
  double payout_per_winner = 0.0;
  bool rollover = false;
};

/// Aggregated behavioral metrics over a batch of iterations. A selection
/// ratio is absent when random players never picked the team.
struct MetricsTable {
  std::vector<std::optional<double>> selection_ratio;
  std::vector<double> mean_winnings;
  std::size_t n_iterations = 0;
};

/// Entry fees net of the platform cut.
double prize_pool(const ContestConfig& cfg);

/// Splits the pool equally over all selectors of the winning team(s); with
/// zero winning selectors the pool rolls over and every payout is zero.
IterationOutcome settle(double pool, const std::vector<std::size_t>& winner_teams,
                        const SelectionCounts& selections);

/// Population-normalized ratio of analytical to random selection rates.
std::optional<double> selection_ratio(std::size_t analytical_count, std::size_t random_count,
                                      std::size_t n_analytical, std::size_t n_random);

/// Arithmetic mean of per-iteration payouts, zeros included.
double mean_winnings(const std::vector<double>& payout_history);

/// Full simulation loop: allocate selections, draw one score vector, settle,
/// aggregate. pi must be pre-estimated (see estimate_win_probs).
MetricsTable run_iterations(const ScoreModel& model, const std::vector<double>& pi,
                            const AgentPopulation& pop, const ContestConfig& cfg,
                            std::size_t n_iter, std::uint64_t seed, unsigned threads = 1);

}  // namespace skillgauge
