#pragma once

#include <string>
#include <vector>

#include "skillgauge/contest.hpp"
#include "skillgauge/impact.hpp"
#include "skillgauge/score_model.hpp"

namespace skillgauge {

/// Shared baseline simulation parameters: 4 experts, 1000 users, fee 25 with
/// a 20% cut, rho 0.4, tau 0.2, beta 0.04, delta 0.05, 100k win-prob samples
/// and 10k contest iterations.
struct Baseline {
  std::size_t n_users = 1000;
  double tau = 0.2;
  double beta = 0.04;
  double delta = 0.05;
  double rho = 0.4;
  double entry_fee = 25.0;
  double platform_cut_pct = 20.0;
  std::size_t winprob_samples = 100000;
  std::size_t n_iterations = 10000;

  ContestConfig contest() const {
    return ContestConfig{entry_fee, platform_cut_pct, n_users};
  }
};

/// Built-in expert-team configurations. Accepts canonical names
/// (Equi-mean_Equivariance, Unequal-mean_Equivariance,
/// Unequal-mean_Unequal-std) and kebab-case aliases
/// (equi-mean, unequal-mean, unequal-mean-std).
PointSpec team_preset(const std::string& name, double rho = 0.4);

/// Built-in impact-player configurations: IID, Different_mean,
/// Different_mean_and_std (kebab aliases accepted). rho_I = 0.3,
/// Dirichlet concentration 10.
ImpactModel impact_preset(const std::string& name);

std::vector<std::string> team_preset_names();
std::vector<std::string> impact_preset_names();

/// Truncation convention for the n_experts sweep axis: keep the first k
/// entries of the preset's mean/sd vectors.
PointSpec truncate_spec(const PointSpec& spec, std::size_t k);

}  // namespace skillgauge
