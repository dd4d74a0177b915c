#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nlohmann/json_fwd.hpp"
#include "skillgauge/csv.hpp"
#include "skillgauge/empirical.hpp"
#include "skillgauge/presets.hpp"

namespace skillgauge {

/// One-axis parameter sweep. Axes tau, beta, rho and n_experts vary the
/// baseline simulation on a team preset; impact_config runs the impact
/// contest per preset name; n_common and k_experts sweep the empirical
/// pipeline (scorecards/careers paths required).
struct SweepSpec {
  std::string config_id;  // team preset name
  std::string axis;
  std::vector<std::string> values;  // stringly typed; numeric axes parsed
  Baseline base;
  std::string impact_config;  // impact preset for impact_config axis baseline runs
  std::uint64_t seed = 0;

  std::string scorecards;  // empirical axes only
  std::string careers;
  EmpiricalConfig empirical;

  void validate() const;
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::string& path);

/// Per-axis-value seed, derived from the value's text so results do not
/// depend on the position or evaluation order of values.
std::uint64_t sweep_value_seed(std::uint64_t seed, const std::string& value);

/// Simulation result rows for one configuration, one row per team.
CsvTable simulate_table(const std::string& config_id, const PointSpec& spec,
                        const Baseline& base, std::uint64_t seed, unsigned threads = 1,
                        const std::string& axis = "", const std::string& axis_value = "");

/// Impact contest rows, one per (team, impact) cell, including the deviation
/// from the impact-free per-team baseline and the F-statistic against a
/// same-seed IID reference run.
struct ImpactRunResult {
  CsvTable table;
  double f_vs_iid = 0.0;
  std::vector<double> cell_mean_winnings;
  std::vector<double> cell_deviation;
};
ImpactRunResult impact_run(const std::string& team_config, const PointSpec& team_spec,
                           const std::string& impact_config, const Baseline& base,
                           std::uint64_t seed, unsigned threads = 1,
                           const std::string& axis = "", const std::string& axis_value = "");

/// Empirical result rows: one row per (match, user strategy) plus one
/// TOURNAMENT summary row per strategy.
CsvTable empirical_table(const EmpiricalResult& result, const EmpiricalConfig& cfg,
                         const std::string& axis = "", const std::string& axis_value = "");

/// Runs the whole sweep, one configuration per axis value, rows merged in
/// axis order.
CsvTable run_sweep(const SweepSpec& spec, unsigned threads = 1);

}  // namespace skillgauge
