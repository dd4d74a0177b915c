#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "nlohmann/json_fwd.hpp"

namespace skillgauge {

/// Point-space description of the expert teams: marginal means and standard
/// deviations in fantasy points plus a common pairwise correlation applied in
/// log space.
struct PointSpec {
  std::vector<double> means;
  std::vector<double> sds;
  double rho = 0.0;

  std::size_t size() const { return means.size(); }
  /// Throws ConfigError if sizes mismatch, n < 2, any moment is nonpositive
  /// or rho is outside [0, 1).
  void validate() const;
};

/// Lognormal joint score model in log space, with the Cholesky factor of the
/// log covariance cached for sampling.
struct ScoreModel {
  Eigen::VectorXd mu_log;
  Eigen::VectorXd sigma_log;
  Eigen::MatrixXd corr_log;
  Eigen::MatrixXd chol;  // lower triangular, chol * chol^T = covariance

  std::size_t size() const { return static_cast<std::size_t>(mu_log.size()); }
};

struct WinProbEstimate {
  std::vector<double> probs;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Unit-diagonal matrix with every off-diagonal equal to rho.
Eigen::MatrixXd build_equicorr(std::size_t n, double rho);

/// Lognormal parameters matching the requested point-space marginal mean and
/// SD exactly; the equicorrelation is applied to the log scores.
ScoreModel moment_match(const PointSpec& spec);

/// k rows of exp(mu + L z), z standard normal. Row j is seeded from
/// (seed, j), so output is independent of chunking and worker count.
Eigen::MatrixXd sample_scores(const ScoreModel& model, std::size_t k, std::uint64_t seed,
                              unsigned threads = 1);

/// Empirical win frequencies over k sampled score vectors; row-max ties split
/// equally among the argmax set.
WinProbEstimate estimate_win_probs(const ScoreModel& model, std::size_t k, std::uint64_t seed,
                                   unsigned threads = 1);

/// Closed-form P(team 2 beats team 1) for two-team models; the log score
/// difference is normal so this is an exact oracle for the estimator above.
double analytic_two_team_win_prob(const ScoreModel& model);

nlohmann::json point_spec_to_json(const PointSpec& spec);
PointSpec point_spec_from_json(const nlohmann::json& j);

}  // namespace skillgauge
