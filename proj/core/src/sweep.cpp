#include "skillgauge/sweep.hpp"

#include <algorithm>
#include <fstream>

#include "nlohmann/json.hpp"
#include "skillgauge/errors.hpp"
#include "skillgauge/regression.hpp"
#include "skillgauge/rng.hpp"

namespace skillgauge {

namespace {

const std::vector<std::string> kSimColumns = {
    "config_id",  "axis",         "axis_value",   "impact_config", "n_experts",
    "rho",        "tau",          "beta",         "delta",         "n_users",
    "entry_fee",  "platform_cut", "team",         "impact_index",  "win_prob",
    "selection_ratio", "mean_winnings", "deviation", "n_iterations", "winprob_samples",
    "seed"};

const std::vector<std::string> kEmpiricalColumns = {
    "config_id", "axis",  "axis_value", "match_id", "strategy",   "gain",
    "n_experts", "n_common", "common_actual", "v_mu", "sigma_bar2", "impact",
    "n_iterations", "seed"};

double parse_axis_value(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("non-numeric axis value: " + s);
  }
}

}  // namespace

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("sweep values must be non-empty");
  if (base.n_iterations < 1 || base.winprob_samples < 1)
    throw ConfigError("iteration and sample counts must be >= 1");
  static const std::vector<std::string> kAxes = {"tau",           "beta",     "rho",
                                                 "n_experts",     "impact_config",
                                                 "n_common",      "k_experts"};
  if (std::find(kAxes.begin(), kAxes.end(), axis) == kAxes.end())
    throw ConfigError("unknown sweep axis: " + axis);
  if ((axis == "n_common" || axis == "k_experts") && (scorecards.empty() || careers.empty()))
    throw ConfigError("empirical axes require scorecards and careers files");
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  SweepSpec spec;
  try {
    spec.config_id = j.value("config_id", std::string("Equi-mean_Equivariance"));
    spec.axis = j.at("axis").get<std::string>();
    for (const auto& v : j.at("values")) {
      if (v.is_string())
        spec.values.push_back(v.get<std::string>());
      else
        spec.values.push_back(format_number(v.get<double>()));
    }
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.impact_config = j.value("impact_config", std::string("IID"));
    spec.base.n_users = j.value("n_users", spec.base.n_users);
    spec.base.tau = j.value("tau", spec.base.tau);
    spec.base.beta = j.value("beta", spec.base.beta);
    spec.base.delta = j.value("delta", spec.base.delta);
    spec.base.rho = j.value("rho", spec.base.rho);
    spec.base.entry_fee = j.value("entry_fee", spec.base.entry_fee);
    spec.base.platform_cut_pct = j.value("platform_cut", spec.base.platform_cut_pct);
    spec.base.n_iterations = j.value("n_iterations", spec.base.n_iterations);
    spec.base.winprob_samples = j.value("winprob_samples", spec.base.winprob_samples);
    spec.scorecards = j.value("scorecards", std::string());
    spec.careers = j.value("careers", std::string());
    spec.empirical.n_experts = j.value("k_experts", spec.empirical.n_experts);
    spec.empirical.n_common = j.value("n_common", spec.empirical.n_common);
    spec.empirical.impact = j.value("impact", false);
    spec.empirical.users_per_strategy =
        j.value("users_per_strategy", spec.empirical.users_per_strategy);
    spec.empirical.random_users = j.value("random_users", spec.empirical.random_users);
    spec.empirical.n_iterations = j.value("empirical_iterations", spec.empirical.n_iterations);
    spec.empirical.burn_in = j.value("burn_in", spec.empirical.burn_in);
    spec.empirical.seed = spec.seed;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad sweep spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open sweep spec: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("bad JSON in ") + path + ": " + e.what());
  }
  return sweep_spec_from_json(j);
}

std::uint64_t sweep_value_seed(std::uint64_t seed, const std::string& value) {
  return derive_seed(seed, fnv1a64(value));
}

CsvTable simulate_table(const std::string& config_id, const PointSpec& spec,
                        const Baseline& base, std::uint64_t seed, unsigned threads,
                        const std::string& axis, const std::string& axis_value) {
  const ScoreModel model = moment_match(spec);
  const WinProbEstimate pi =
      estimate_win_probs(model, base.winprob_samples, derive_seed(seed, 0), threads);
  const AgentPopulation pop =
      AgentPopulation::make(base.n_users, base.tau, base.beta, base.delta, spec.size());
  const MetricsTable metrics = run_iterations(model, pi.probs, pop, base.contest(),
                                              base.n_iterations, derive_seed(seed, 1), threads);

  CsvTable table(kSimColumns);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    auto& row = table.add_row();
    row.set(table.column("config_id"), config_id)
        .set(table.column("axis"), axis)
        .set(table.column("axis_value"), axis_value)
        .set(table.column("impact_config"), std::string())
        .set(table.column("n_experts"), static_cast<std::uint64_t>(spec.size()))
        .set(table.column("rho"), spec.rho)
        .set(table.column("tau"), base.tau)
        .set(table.column("beta"), base.beta)
        .set(table.column("delta"), base.delta)
        .set(table.column("n_users"), static_cast<std::uint64_t>(base.n_users))
        .set(table.column("entry_fee"), base.entry_fee)
        .set(table.column("platform_cut"), base.platform_cut_pct)
        .set(table.column("team"), static_cast<std::uint64_t>(i + 1))
        .set(table.column("impact_index"), std::string())
        .set(table.column("win_prob"), pi.probs[i])
        .set(table.column("selection_ratio"), metrics.selection_ratio[i])
        .set(table.column("mean_winnings"), metrics.mean_winnings[i])
        .set(table.column("deviation"), std::string())
        .set(table.column("n_iterations"), static_cast<std::uint64_t>(base.n_iterations))
        .set(table.column("winprob_samples"), static_cast<std::uint64_t>(base.winprob_samples))
        .set(table.column("seed"), seed);
  }
  return table;
}

namespace {

ImpactMetrics run_one_impact(const ScoreModel& model, const ImpactModel& impact,
                             const Baseline& base, std::uint64_t seed, unsigned threads,
                             ComboWinProbs* probs_out) {
  const ComboWinProbs pi =
      estimate_combo_win_probs(model, impact, base.winprob_samples, derive_seed(seed, 0),
                               threads);
  AgentPopulation pop = AgentPopulation::make(base.n_users, base.tau, base.beta, base.delta,
                                              pi.n_teams * pi.n_impacts);
  const ImpactMetrics metrics = run_impact_iterations(model, impact, pi, pop, base.contest(),
                                                      base.n_iterations, derive_seed(seed, 1),
                                                      threads);
  if (probs_out) *probs_out = pi;
  return metrics;
}

}  // namespace

ImpactRunResult impact_run(const std::string& team_config, const PointSpec& team_spec,
                           const std::string& impact_config, const Baseline& base,
                           std::uint64_t seed, unsigned threads, const std::string& axis,
                           const std::string& axis_value) {
  const ScoreModel model = moment_match(team_spec);
  const ImpactModel impact = impact_preset(impact_config);
  ComboWinProbs pi;
  const ImpactMetrics metrics = run_one_impact(model, impact, base, seed, threads, &pi);

  // Impact-free per-team baseline winnings, same seeds.
  const WinProbEstimate team_pi =
      estimate_win_probs(model, base.winprob_samples, derive_seed(seed, 2), threads);
  const AgentPopulation team_pop =
      AgentPopulation::make(base.n_users, base.tau, base.beta, base.delta, team_spec.size());
  const MetricsTable baseline = run_iterations(model, team_pi.probs, team_pop, base.contest(),
                                               base.n_iterations, derive_seed(seed, 3), threads);
  const std::vector<double> deviation = mean_deviation(metrics, baseline.mean_winnings);

  // Reference IID run (same seed) for the variance-ratio statistic.
  const ImpactMetrics iid =
      run_one_impact(model, impact_preset("IID"), base, seed, threads, nullptr);
  const MetricsTable iid_baseline = baseline;  // same team model, reuse
  const std::vector<double> iid_dev = mean_deviation(iid, iid_baseline.mean_winnings);

  ImpactRunResult out{CsvTable(kSimColumns)};
  out.cell_mean_winnings = metrics.mean_winnings;
  out.cell_deviation = deviation;
  const auto f = f_statistic(deviation, iid_dev);
  out.f_vs_iid = f.value_or(0.0);

  CsvTable& table = out.table;
  for (std::size_t i = 0; i < metrics.n_teams; ++i) {
    for (std::size_t j = 0; j < metrics.n_impacts; ++j) {
      const std::size_t cell = i * metrics.n_impacts + j;
      auto& row = table.add_row();
      row.set(table.column("config_id"), team_config)
          .set(table.column("axis"), axis)
          .set(table.column("axis_value"), axis_value)
          .set(table.column("impact_config"), impact_config)
          .set(table.column("n_experts"), static_cast<std::uint64_t>(metrics.n_teams))
          .set(table.column("rho"), team_spec.rho)
          .set(table.column("tau"), base.tau)
          .set(table.column("beta"), base.beta)
          .set(table.column("delta"), base.delta)
          .set(table.column("n_users"), static_cast<std::uint64_t>(base.n_users))
          .set(table.column("entry_fee"), base.entry_fee)
          .set(table.column("platform_cut"), base.platform_cut_pct)
          .set(table.column("team"), static_cast<std::uint64_t>(i + 1))
          .set(table.column("impact_index"), static_cast<std::uint64_t>(j + 1))
          .set(table.column("win_prob"), pi.at(i, j))
          .set(table.column("selection_ratio"), metrics.selection_ratio[cell])
          .set(table.column("mean_winnings"), metrics.mean_winnings[cell])
          .set(table.column("deviation"), deviation[cell])
          .set(table.column("n_iterations"), static_cast<std::uint64_t>(base.n_iterations))
          .set(table.column("winprob_samples"),
               static_cast<std::uint64_t>(base.winprob_samples))
          .set(table.column("seed"), seed);
    }
  }
  return out;
}

CsvTable empirical_table(const EmpiricalResult& result, const EmpiricalConfig& cfg,
                         const std::string& axis, const std::string& axis_value) {
  CsvTable table(kEmpiricalColumns);
  for (std::size_t s = 0; s < result.strategy_names.size(); ++s) {
    for (std::size_t m = 0; m < result.matches.size(); ++m) {
      const auto& mr = result.matches[m];
      auto& row = table.add_row();
      row.set(table.column("config_id"), std::string("empirical"))
          .set(table.column("axis"), axis)
          .set(table.column("axis_value"), axis_value)
          .set(table.column("match_id"), mr.match_id)
          .set(table.column("strategy"), result.strategy_names[s])
          .set(table.column("gain"), result.gains[s].matchwise[m])
          .set(table.column("n_experts"), static_cast<std::uint64_t>(cfg.n_experts))
          .set(table.column("n_common"), static_cast<std::uint64_t>(cfg.n_common))
          .set(table.column("common_actual"), mr.covariates.common_actual)
          .set(table.column("v_mu"), mr.covariates.between_team_var)
          .set(table.column("sigma_bar2"), mr.covariates.within_team_var)
          .set(table.column("impact"), std::string(cfg.impact ? "on" : "off"))
          .set(table.column("n_iterations"), static_cast<std::uint64_t>(cfg.n_iterations))
          .set(table.column("seed"), cfg.seed);
    }
    auto& row = table.add_row();
    row.set(table.column("config_id"), std::string("empirical"))
        .set(table.column("axis"), axis)
        .set(table.column("axis_value"), axis_value)
        .set(table.column("match_id"), std::string("TOURNAMENT"))
        .set(table.column("strategy"), result.strategy_names[s])
        .set(table.column("gain"), result.gains[s].tournament)
        .set(table.column("n_experts"), static_cast<std::uint64_t>(cfg.n_experts))
        .set(table.column("n_common"), static_cast<std::uint64_t>(cfg.n_common))
        .set(table.column("common_actual"), std::string())
        .set(table.column("v_mu"), std::string())
        .set(table.column("sigma_bar2"), std::string())
        .set(table.column("impact"), std::string(cfg.impact ? "on" : "off"))
        .set(table.column("n_iterations"), static_cast<std::uint64_t>(cfg.n_iterations))
        .set(table.column("seed"), cfg.seed);
  }
  return table;
}

CsvTable run_sweep(const SweepSpec& spec, unsigned threads) {
  spec.validate();
  const bool empirical_axis = spec.axis == "n_common" || spec.axis == "k_experts";
  CsvTable merged(empirical_axis ? kEmpiricalColumns : kSimColumns);

  Dataset data;
  if (empirical_axis) data = load_dataset(spec.scorecards, spec.careers);

  for (const std::string& value : spec.values) {
    const std::uint64_t vseed = sweep_value_seed(spec.seed, value);
    if (spec.axis == "tau" || spec.axis == "beta" || spec.axis == "rho") {
      Baseline base = spec.base;
      PointSpec team = team_preset(spec.config_id, base.rho);
      const double v = parse_axis_value(value);
      if (spec.axis == "tau") base.tau = v;
      else if (spec.axis == "beta") base.beta = v;
      else team.rho = v;
      merged.append(simulate_table(spec.config_id, team, base, vseed, threads, spec.axis,
                                   value));
    } else if (spec.axis == "n_experts") {
      const std::size_t k = static_cast<std::size_t>(parse_axis_value(value));
      const PointSpec team =
          truncate_spec(team_preset(spec.config_id, spec.base.rho), k);
      merged.append(simulate_table(spec.config_id, team, spec.base, vseed, threads, spec.axis,
                                   value));
    } else if (spec.axis == "impact_config") {
      const PointSpec team = team_preset(spec.config_id, spec.base.rho);
      merged.append(impact_run(spec.config_id, team, value, spec.base, vseed, threads,
                               spec.axis, value)
                        .table);
    } else {
      EmpiricalConfig cfg = spec.empirical;
      cfg.seed = vseed;
      const std::size_t v = static_cast<std::size_t>(parse_axis_value(value));
      if (spec.axis == "n_common") cfg.n_common = v;
      else cfg.n_experts = v;
      merged.append(
          empirical_table(run_empirical(data, cfg, threads), cfg, spec.axis, value));
    }
  }
  return merged;
}

}  // namespace skillgauge
