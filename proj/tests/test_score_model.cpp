#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "skillgauge/errors.hpp"
#include "skillgauge/mathx.hpp"
#include "skillgauge/presets.hpp"
#include "skillgauge/score_model.hpp"

using namespace skillgauge;

TEST_CASE("moment matching hits the requested point-space moments") {
  PointSpec spec;
  spec.means = {500, 500};
  spec.sds = {60, 60};
  spec.rho = 0.0;
  const ScoreModel model = moment_match(spec);

  // Independent recomputation of the lognormal parameter formulas.
  const double cv2 = (60.0 / 500.0) * (60.0 / 500.0);
  const double sigma2 = std::log(1.0 + cv2);
  const double mu = std::log(500.0) - 0.5 * sigma2;
  CHECK(model.sigma_log[0] * model.sigma_log[0] == doctest::Approx(sigma2).epsilon(1e-12));
  CHECK(model.mu_log[0] == doctest::Approx(mu).epsilon(1e-12));
  // Frozen reference values.
  CHECK(model.mu_log[0] == doctest::Approx(6.2074594).epsilon(1e-6));
  CHECK(model.sigma_log[0] == doctest::Approx(0.1195717).epsilon(1e-5));

  // Round trip: the implied point moments match the spec.
  const double s2 = model.sigma_log[0] * model.sigma_log[0];
  const double implied_mean = std::exp(model.mu_log[0] + 0.5 * s2);
  const double implied_var = (std::exp(s2) - 1.0) * std::exp(2.0 * model.mu_log[0] + s2);
  CHECK(implied_mean == doctest::Approx(500.0).epsilon(1e-10));
  CHECK(std::sqrt(implied_var) == doctest::Approx(60.0).epsilon(1e-10));
}

TEST_CASE("unequal means map to distinct log locations") {
  const PointSpec spec = team_preset("Unequal-mean_Equivariance", 0.4);
  const ScoreModel model = moment_match(spec);
  CHECK(model.mu_log[0] == doctest::Approx(std::log(440.0) -
                                           0.5 * std::log(1 + std::pow(60.0 / 440, 2))));
  CHECK(model.mu_log[3] == doctest::Approx(std::log(550.0) -
                                           0.5 * std::log(1 + std::pow(60.0 / 550, 2))));
  CHECK(model.mu_log[0] < model.mu_log[1]);
  CHECK(model.mu_log[2] < model.mu_log[3]);
}

TEST_CASE("equicorrelation matrix") {
  const Eigen::MatrixXd c = build_equicorr(3, 0.4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(c(i, j) == doctest::Approx(i == j ? 1.0 : 0.4));
}

TEST_CASE("spec validation rejects bad input") {
  PointSpec spec;
  spec.means = {500};
  spec.sds = {60};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // n < 2
  spec.means = {500, 500};
  spec.sds = {60};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // size mismatch
  spec.sds = {60, -1};
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // nonpositive sd
  spec.sds = {60, 60};
  spec.rho = 1.0;
  CHECK_THROWS_AS(spec.validate(), ConfigError);  // rho out of range
  spec.rho = 0.4;
  CHECK_NOTHROW(spec.validate());
}

TEST_CASE("sampled scores reproduce the requested moments") {
  const PointSpec spec = team_preset("equi-mean", 0.4);
  const ScoreModel model = moment_match(spec);
  const std::size_t k = 200000;
  const Eigen::MatrixXd scores = sample_scores(model, k, 123);
  REQUIRE(scores.rows() == static_cast<Eigen::Index>(k));
  for (int t = 0; t < 4; ++t) {
    const double m = scores.col(t).mean();
    const double sd = std::sqrt((scores.col(t).array() - m).square().sum() / (k - 1));
    // MC standard error of the mean is 60/sqrt(k) ~ 0.13; allow 5 SE.
    CHECK(m == doctest::Approx(500.0).epsilon(0.005));
    CHECK(sd == doctest::Approx(60.0).epsilon(0.02));
  }
  // Log-space correlation near rho.
  const Eigen::ArrayXd a = scores.col(0).array().log();
  const Eigen::ArrayXd b = scores.col(1).array().log();
  const double ma = a.mean(), mb = b.mean();
  const double cov = ((a - ma) * (b - mb)).sum() / (k - 1);
  const double corr = cov / std::sqrt(((a - ma).square().sum() / (k - 1)) *
                                      ((b - mb).square().sum() / (k - 1)));
  CHECK(corr == doctest::Approx(0.4).epsilon(0.03));
}

TEST_CASE("sampling is invariant to the worker count") {
  const ScoreModel model = moment_match(team_preset("unequal-mean", 0.4));
  const Eigen::MatrixXd one = sample_scores(model, 5000, 99, 1);
  const Eigen::MatrixXd four = sample_scores(model, 5000, 99, 4);
  CHECK((one - four).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("win probabilities sum to one and respect symmetry") {
  const ScoreModel model = moment_match(team_preset("equi-mean", 0.4));
  const WinProbEstimate est = estimate_win_probs(model, 100000, 7);
  double total = 0.0;
  for (double p : est.probs) {
    CHECK(p == doctest::Approx(0.25).epsilon(0.05));
    total += p;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two-team Monte Carlo matches the analytic oracle") {
  PointSpec spec;
  spec.means = {440, 550};
  spec.sds = {60, 60};
  spec.rho = 0.4;
  const ScoreModel model = moment_match(spec);
  const double exact = analytic_two_team_win_prob(model);

  // Independent closed form: the log difference is normal.
  const double v1 = model.sigma_log[0] * model.sigma_log[0];
  const double v2 = model.sigma_log[1] * model.sigma_log[1];
  const double cov = 0.4 * model.sigma_log[0] * model.sigma_log[1];
  const double z = (model.mu_log[1] - model.mu_log[0]) / std::sqrt(v1 + v2 - 2 * cov);
  CHECK(exact == doctest::Approx(normal_cdf(z)).epsilon(1e-12));
  CHECK(exact > 0.9);  // team 2 dominates

  const std::size_t k = 100000;
  const WinProbEstimate est = estimate_win_probs(model, k, 31);
  const double se = std::sqrt(exact * (1 - exact) / k);
  CHECK(std::abs(est.probs[1] - exact) < 3 * se + 1e-9);
}

TEST_CASE("json round trip") {
  const PointSpec spec = team_preset("unequal-mean-std", 0.2);
  const PointSpec back = point_spec_from_json(point_spec_to_json(spec));
  CHECK(back.means == spec.means);
  CHECK(back.sds == spec.sds);
  CHECK(back.rho == spec.rho);
}
