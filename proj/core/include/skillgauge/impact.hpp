#pragma once

#include <cstdint>
#include <vector>

#include "skillgauge/agents.hpp"
#include "skillgauge/contest.hpp"
#include "skillgauge/score_model.hpp"

namespace skillgauge {

/// Impact-player score model: lognormal joint points (moment-matched like
/// team specs) plus the Dirichlet concentration for the lowest-contributor
/// share of an 11-member team.
struct ImpactModel {
  PointSpec points;
  std::vector<double> dirichlet_alpha;  // length 11, entries > 0

  void validate() const;
  static ImpactModel make(PointSpec points, double dirichlet_concentration = 10.0);
};

/// Win probabilities over (team, impact) combinations.
struct ComboWinProbs {
  std::size_t n_teams = 0;
  std::size_t n_impacts = 0;
  std::vector<double> probs;  // row-major n_teams x n_impacts
  std::size_t n_samples = 0;

  double at(std::size_t team, std::size_t impact) const {
    return probs[team * n_impacts + impact];
  }
};

/// Per-cell mean winnings from an impact contest run.
struct ImpactMetrics {
  std::size_t n_teams = 0;
  std::size_t n_impacts = 0;
  std::vector<double> mean_winnings;                        // row-major
  std::vector<std::optional<double>> selection_ratio;       // row-major
  std::size_t n_iterations = 0;

  double winnings_at(std::size_t team, std::size_t impact) const {
    return mean_winnings[team * n_impacts + impact];
  }
};

/// Minimum coordinate of a Dirichlet(alpha) draw; always in (0, 1/len].
double sample_min_share(const std::vector<double>& alpha, std::uint64_t seed);

/// B = P(1-S) + max(S*P, I). Never below P; equals P when the impact player
/// does not beat the lowest contributor's share.
double boosted_score(double team_points, double min_share, double impact_points);

/// Monte Carlo win probabilities of each (team, impact) combination under
/// boosted scores; argmax ties split equally.
ComboWinProbs estimate_combo_win_probs(const ScoreModel& team_model, const ImpactModel& impact,
                                       std::size_t k, std::uint64_t seed, unsigned threads = 1);

/// Contest loop where users select a (team, impact) cell: analytical beliefs
/// are Dirichlet over all cells, random users uniform over cells.
ImpactMetrics run_impact_iterations(const ScoreModel& team_model, const ImpactModel& impact,
                                    const ComboWinProbs& pi, const AgentPopulation& pop,
                                    const ContestConfig& cfg, std::size_t n_iter,
                                    std::uint64_t seed, unsigned threads = 1);

/// deviation[i][j] = combo_winnings[i][j] - baseline[i].
std::vector<double> mean_deviation(const ImpactMetrics& combo,
                                   const std::vector<double>& baseline);

}  // namespace skillgauge
