#include "skillgauge/score_model.hpp"

#include <cmath>

#include "nlohmann/json.hpp"
#include "skillgauge/errors.hpp"
#include "skillgauge/mathx.hpp"
#include "skillgauge/parallel.hpp"
#include "skillgauge/rng.hpp"

namespace skillgauge {

void PointSpec::validate() const {
  if (means.size() != sds.size()) throw ConfigError("means and sds must have equal length");
  if (means.size() < 2) throw ConfigError("need at least 2 teams");
  for (double m : means)
    if (!(m > 0.0)) throw ConfigError("all means must be positive");
  for (double s : sds)
    if (!(s > 0.0)) throw ConfigError("all sds must be positive");
  if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");
}

Eigen::MatrixXd build_equicorr(std::size_t n, double rho) {
  if (n < 2) throw ConfigError("equicorrelation needs n >= 2");
  if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError("rho must lie in [0, 1)");
  Eigen::MatrixXd corr = Eigen::MatrixXd::Constant(n, n, rho);
  corr.diagonal().setOnes();
  return corr;
}

ScoreModel moment_match(const PointSpec& spec) {
  spec.validate();
  const auto n = spec.size();
  ScoreModel model;
  model.mu_log.resize(n);
  model.sigma_log.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double cv = spec.sds[i] / spec.means[i];
    const double var_log = std::log1p(cv * cv);
    model.sigma_log[i] = std::sqrt(var_log);
    model.mu_log[i] = std::log(spec.means[i]) - var_log / 2.0;
  }
  model.corr_log = build_equicorr(n, spec.rho);

  Eigen::MatrixXd cov =
      model.sigma_log.asDiagonal() * model.corr_log * model.sigma_log.asDiagonal();
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw NumericalError("log-space covariance is not positive definite");
  model.chol = llt.matrixL();
  return model;
}

Eigen::MatrixXd sample_scores(const ScoreModel& model, std::size_t k, std::uint64_t seed,
                              unsigned threads) {
  if (k < 1) throw ConfigError("sample count must be >= 1");
  const auto n = model.size();
  Eigen::MatrixXd out(k, n);
  parallel_chunks(k, threads, [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd z(n);
    for (std::size_t j = begin; j < end; ++j) {
      Rng rng(derive_seed(seed, j));
      for (std::size_t i = 0; i < n; ++i) z[i] = rng.normal();
      out.row(j) = (model.mu_log + model.chol * z).array().exp();
    }
  });
  return out;
}

WinProbEstimate estimate_win_probs(const ScoreModel& model, std::size_t k, std::uint64_t seed,
                                   unsigned threads) {
  if (k < 1) throw ConfigError("sample count must be >= 1");
  const auto n = model.size();
  // Per-sample winner shares, reduced sequentially so the result does not
  // depend on the worker count.
  std::vector<std::vector<double>> shares(k);
  parallel_chunks(k, threads, [&](std::size_t begin, std::size_t end) {
    Eigen::VectorXd z(n);
    for (std::size_t j = begin; j < end; ++j) {
      Rng rng(derive_seed(seed, j));
      for (std::size_t i = 0; i < n; ++i) z[i] = rng.normal();
      const Eigen::VectorXd logscore = model.mu_log + model.chol * z;
      const double best = logscore.maxCoeff();
      std::vector<std::size_t> argmax;
      for (std::size_t i = 0; i < n; ++i)
        if (logscore[i] == best) argmax.push_back(i);
      std::vector<double> share(n, 0.0);
      for (std::size_t i : argmax) share[i] = 1.0 / static_cast<double>(argmax.size());
      shares[j] = std::move(share);
    }
  });

  WinProbEstimate est;
  est.probs.assign(n, 0.0);
  est.n_samples = k;
  est.seed = seed;
  for (const auto& share : shares)
    for (std::size_t i = 0; i < n; ++i) est.probs[i] += share[i];
  for (double& p : est.probs) p /= static_cast<double>(k);
  return est;
}

double analytic_two_team_win_prob(const ScoreModel& model) {
  if (model.size() != 2) throw ConfigError("analytic oracle requires exactly 2 teams");
  const double s1 = model.sigma_log[0];
  const double s2 = model.sigma_log[1];
  const double rho = model.corr_log(0, 1);
  const double var = s1 * s1 + s2 * s2 - 2.0 * rho * s1 * s2;
  if (var <= 0.0) return model.mu_log[1] > model.mu_log[0] ? 1.0 : 0.0;
  return normal_cdf((model.mu_log[1] - model.mu_log[0]) / std::sqrt(var));
}

nlohmann::json point_spec_to_json(const PointSpec& spec) {
  return nlohmann::json{{"means", spec.means}, {"sds", spec.sds}, {"rho", spec.rho}};
}

PointSpec point_spec_from_json(const nlohmann::json& j) {
  PointSpec spec;
  try {
    spec.means = j.at("means").get<std::vector<double>>();
    spec.sds = j.at("sds").get<std::vector<double>>();
    spec.rho = j.at("rho").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad point spec document: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace skillgauge
