// skillgauge: Monte Carlo simulation and analysis CLI for limited-selection
// fantasy contests. See README.md for usage.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "skillgauge/csv.hpp"
#include "skillgauge/empirical.hpp"
#include "skillgauge/errors.hpp"
#include "skillgauge/fixtures.hpp"
#include "skillgauge/presets.hpp"
#include "skillgauge/regression.hpp"
#include "skillgauge/rng.hpp"
#include "skillgauge/sweep.hpp"

namespace sg = skillgauge;

namespace {

constexpr const char* kVersion = "0.1.0";

unsigned resolve_threads(unsigned cli_threads) {
  if (cli_threads > 0) return cli_threads;
  if (const char* env = std::getenv("SKILLGAUGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::uint64_t resolve_seed(std::int64_t cli_seed) {
  if (cli_seed >= 0) return static_cast<std::uint64_t>(cli_seed);
  std::random_device rd;
  const std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  std::cout << "seed=" << seed << "\n";
  return seed;
}

std::string checksum_hex(const std::string& content) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(sg::fnv1a64(content)));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw sg::DataError("cannot read back artifact: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Manifest written next to the primary artifact; sufficient to reproduce any
// output byte-identically.
void write_manifest(const std::string& command, const nlohmann::json& params,
                    std::uint64_t seed, const std::vector<std::string>& artifacts) {
  if (artifacts.empty()) return;
  nlohmann::json manifest{{"tool", "skillgauge"},
                          {"version", kVersion},
                          {"command", command},
                          {"seed", seed},
                          {"params", params}};
  nlohmann::json sums = nlohmann::json::object();
  for (const auto& path : artifacts) sums[path] = checksum_hex(read_file(path));
  manifest["artifacts"] = sums;
  sg::atomic_write(artifacts.front() + ".manifest.json", manifest.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

int cmd_simulate(const std::string& preset, double tau, double beta, double rho,
                 std::size_t n_users, std::size_t iters, std::size_t winprob_samples,
                 std::int64_t seed_arg, const std::string& out, unsigned threads) {
  const std::uint64_t seed = resolve_seed(seed_arg);
  sg::Baseline base;
  base.tau = tau;
  base.beta = beta;
  base.rho = rho;
  base.n_users = n_users;
  base.n_iterations = iters;
  base.winprob_samples = winprob_samples;
  const sg::PointSpec spec = sg::team_preset(preset, rho);
  const sg::CsvTable table =
      sg::simulate_table(preset, spec, base, seed, resolve_threads(threads));
  table.write(out);
  write_manifest("simulate",
                 {{"preset", preset},
                  {"tau", tau},
                  {"beta", beta},
                  {"rho", rho},
                  {"n_users", n_users},
                  {"iters", iters},
                  {"winprob_samples", winprob_samples}},
                 seed, {out});
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out, std::int64_t seed_arg,
              unsigned threads) {
  sg::SweepSpec spec = sg::load_sweep_spec(spec_path);
  if (seed_arg >= 0) {
    spec.seed = static_cast<std::uint64_t>(seed_arg);
    spec.empirical.seed = spec.seed;
  }
  const sg::CsvTable table = sg::run_sweep(spec, resolve_threads(threads));
  table.write(out);
  write_manifest("sweep", {{"spec", spec_path}, {"axis", spec.axis}}, spec.seed, {out});
  std::cout << "wrote " << out << " (" << table.n_rows() << " rows)\n";
  return 0;
}

int cmd_impact(const std::string& team_preset_name, const std::string& impact_preset_name,
               std::size_t iters, std::size_t winprob_samples, std::size_t n_users,
               std::int64_t seed_arg, const std::string& out, unsigned threads) {
  const std::uint64_t seed = resolve_seed(seed_arg);
  sg::Baseline base;
  base.n_iterations = iters;
  base.winprob_samples = winprob_samples;
  base.n_users = n_users;
  const sg::PointSpec team = sg::team_preset(team_preset_name, base.rho);
  const sg::ImpactRunResult result = sg::impact_run(
      team_preset_name, team, impact_preset_name, base, seed, resolve_threads(threads));
  result.table.write(out);
  write_manifest("impact",
                 {{"team_preset", team_preset_name},
                  {"impact_preset", impact_preset_name},
                  {"iters", iters},
                  {"winprob_samples", winprob_samples},
                  {"n_users", n_users},
                  {"f_vs_iid", result.f_vs_iid}},
                 seed, {out});
  std::cout << "wrote " << out << "\nf_statistic_vs_iid=" << sg::format_number(result.f_vs_iid)
            << "\n";
  return 0;
}

int cmd_empirical(const std::string& scorecards, const std::string& careers,
                  std::size_t experts, std::size_t common, bool impact, std::size_t iters,
                  std::size_t users_per_strategy, std::size_t random_users,
                  std::size_t burn_in, std::int64_t seed_arg, const std::string& out,
                  unsigned threads) {
  const std::uint64_t seed = resolve_seed(seed_arg);
  sg::EmpiricalConfig cfg;
  cfg.n_experts = experts;
  cfg.n_common = common;
  cfg.impact = impact;
  cfg.n_iterations = iters;
  cfg.users_per_strategy = users_per_strategy;
  cfg.random_users = random_users;
  cfg.burn_in = burn_in;
  cfg.seed = seed;
  const sg::Dataset data = sg::load_dataset(scorecards, careers);
  const sg::EmpiricalResult result =
      sg::run_empirical(data, cfg, resolve_threads(threads));
  const sg::CsvTable table = sg::empirical_table(result, cfg);
  table.write(out);
  write_manifest("empirical",
                 {{"scorecards", scorecards},
                  {"careers", careers},
                  {"experts", experts},
                  {"common", common},
                  {"impact", impact},
                  {"iters", iters},
                  {"users_per_strategy", users_per_strategy},
                  {"random_users", random_users},
                  {"burn_in", burn_in}},
                 seed, {out});
  for (std::size_t s = 0; s < result.strategy_names.size(); ++s)
    std::cout << result.strategy_names[s]
              << " tournament_gain=" << sg::format_number(result.gains[s].tournament) << "\n";
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_regress(const std::string& in, const std::string& model, const std::string& out) {
  const sg::ParsedCsv csv = sg::read_csv(in);
  // Keep rows where every referenced column parses as a number.
  sg::NumericTable table;
  table.labels = csv.header;
  for (const auto& cells : csv.rows) {
    std::vector<double> row(cells.size(), 0.0);
    bool ok = true;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        std::size_t pos = 0;
        row[i] = cells[i].empty() ? std::nan("") : std::stod(cells[i], &pos);
        if (!cells[i].empty() && pos != cells[i].size()) row[i] = std::nan("");
      } catch (const std::exception&) {
        row[i] = std::nan("");
      }
    }
    (void)ok;
    table.rows.push_back(std::move(row));
  }
  sg::Design design = sg::parse_formula(table, model);
  // Drop observations with non-numeric response or regressors.
  sg::Design clean;
  clean.response = design.response;
  clean.labels = design.labels;
  for (std::size_t i = 0; i < design.n(); ++i) {
    bool ok = std::isfinite(design.y[i]);
    for (double v : design.x[i]) ok = ok && std::isfinite(v);
    if (!ok) continue;
    clean.y.push_back(design.y[i]);
    clean.x.push_back(design.x[i]);
  }
  const sg::RegressionFit fit = sg::ols_fit(clean);
  const std::string report = fit.report();
  std::cout << report;
  if (!out.empty()) {
    sg::atomic_write(out, report);
    write_manifest("regress", {{"in", in}, {"model", model}}, 0, {out});
  }
  return 0;
}

int cmd_fixtures(std::size_t matches, std::size_t players, std::int64_t seed_arg,
                 const std::string& out_dir) {
  const std::uint64_t seed = resolve_seed(seed_arg);
  sg::FixtureSpec spec;
  spec.n_matches = matches;
  spec.n_players = players;
  spec.seed = seed;
  const sg::Dataset data = sg::generate_fixture(spec);
  const std::string scorecards = out_dir + "/scorecards.csv";
  const std::string careers = out_dir + "/careers.csv";
  sg::write_fixture(data, scorecards, careers);
  write_manifest("fixtures", {{"matches", matches}, {"players", players}}, seed,
                 {scorecards, careers});
  std::cout << "wrote " << scorecards << " and " << careers << "\n";
  return 0;
}

// Minimal SVG line chart: one polyline per series value.
int cmd_render(const std::string& in, const std::string& x_col, const std::string& y_col,
               const std::string& series_col, const std::string& out) {
  const sg::ParsedCsv csv = sg::read_csv(in);
  const std::size_t xi = csv.column(x_col);
  const std::size_t yi = csv.column(y_col);
  const std::optional<std::size_t> si =
      series_col.empty() ? std::nullopt : std::optional(csv.column(series_col));

  struct Point {
    double x, y;
  };
  std::map<std::string, std::vector<Point>> series;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& cells : csv.rows) {
    try {
      const double x = std::stod(cells[xi]);
      const double y = std::stod(cells[yi]);
      series[si ? cells[*si] : "series"].push_back({x, y});
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    } catch (const std::exception&) {
      // skip non-numeric rows (e.g. NA cells)
    }
  }
  if (series.empty()) throw sg::DataError("no numeric points to render");
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;

  const double w = 640, h = 420, ml = 60, mr = 20, mt = 20, mb = 40;
  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
  auto sy = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
  const char* colors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
      << h - mb << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
      << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << ml << "\" y=\"" << h - 10 << "\" font-size=\"12\">"
      << sg::format_number(xmin) << "</text>\n";
  svg << "<text x=\"" << w - mr - 40 << "\" y=\"" << h - 10 << "\" font-size=\"12\">"
      << sg::format_number(xmax) << "</text>\n";
  svg << "<text x=\"5\" y=\"" << h - mb << "\" font-size=\"12\">" << sg::format_number(ymin)
      << "</text>\n";
  svg << "<text x=\"5\" y=\"" << mt + 10 << "\" font-size=\"12\">" << sg::format_number(ymax)
      << "</text>\n";
  std::size_t ci = 0;
  double legend_y = mt + 12;
  for (auto& [name, pts] : series) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    svg << "<polyline fill=\"none\" stroke=\"" << colors[ci % 8] << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& p : pts) svg << sg::format_number(sx(p.x)) << "," << sg::format_number(sy(p.y)) << " ";
    svg << "\"/>\n";
    svg << "<text x=\"" << w - mr - 150 << "\" y=\"" << legend_y << "\" font-size=\"12\" fill=\""
        << colors[ci % 8] << "\">" << name << "</text>\n";
    legend_y += 14;
    ++ci;
  }
  svg << "</svg>\n";
  sg::atomic_write(out, svg.str());
  write_manifest("render", {{"in", in}, {"x", x_col}, {"y", y_col}, {"series", series_col}}, 0,
                 {out});
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skill-vs-chance simulation toolkit for limited-selection fantasy contests"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = SKILLGAUGE_THREADS env or 1)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run one contest configuration");
  std::string sim_preset = "Equi-mean_Equivariance";
  double sim_tau = 0.2, sim_beta = 0.04, sim_rho = 0.4;
  std::size_t sim_users = 1000, sim_iters = 10000, sim_wp = 100000;
  std::int64_t sim_seed = -1;
  std::string sim_out = "simulate.csv";
  sim->add_option("--preset", sim_preset, "team preset name");
  sim->add_option("--tau", sim_tau, "analytical fraction");
  sim->add_option("--beta", sim_beta, "belief error bound");
  sim->add_option("--rho", sim_rho, "pairwise log-score correlation");
  sim->add_option("--n-users", sim_users, "participants");
  sim->add_option("--iters", sim_iters, "contest iterations");
  sim->add_option("--winprob-samples", sim_wp, "win probability samples");
  sim->add_option("--seed", sim_seed, "RNG seed (omit for a generated one)");
  sim->add_option("--out", sim_out, "output CSV");

  // sweep
  auto* swp = app.add_subcommand("sweep", "run a one-axis parameter sweep from a JSON spec");
  std::string swp_spec, swp_out = "sweep.csv";
  std::int64_t swp_seed = -1;
  swp->add_option("--spec", swp_spec, "sweep spec JSON file")->required();
  swp->add_option("--out", swp_out, "output CSV");
  swp->add_option("--seed", swp_seed, "seed override");

  // impact
  auto* imp = app.add_subcommand("impact", "run the impact-player contest");
  std::string imp_team = "Unequal-mean_Equivariance", imp_cfg = "Different_mean";
  std::size_t imp_iters = 10000, imp_wp = 100000, imp_users = 1000;
  std::int64_t imp_seed = -1;
  std::string imp_out = "impact.csv";
  imp->add_option("--team-preset", imp_team, "team preset name");
  imp->add_option("--impact-preset", imp_cfg, "impact preset name");
  imp->add_option("--iters", imp_iters, "contest iterations");
  imp->add_option("--winprob-samples", imp_wp, "win probability samples");
  imp->add_option("--n-users", imp_users, "participants");
  imp->add_option("--seed", imp_seed, "RNG seed");
  imp->add_option("--out", imp_out, "output CSV");

  // empirical
  auto* emp = app.add_subcommand("empirical", "scorecard-driven contest replication");
  std::string emp_sc, emp_ca, emp_out = "empirical.csv";
  std::size_t emp_experts = 4, emp_common = 7, emp_iters = 1;
  std::size_t emp_users = 1000, emp_random = 16000, emp_burn = 3;
  bool emp_impact = false;
  std::int64_t emp_seed = -1;
  emp->add_option("--scorecards", emp_sc, "scorecard CSV")->required();
  emp->add_option("--careers", emp_ca, "career CSV")->required();
  emp->add_option("--experts", emp_experts, "number of expert teams (2-4)");
  emp->add_option("--common", emp_common, "prescribed common players");
  emp->add_flag("--impact,!--no-impact", emp_impact, "enable the impact player");
  emp->add_option("--iters", emp_iters, "user population redraws per match");
  emp->add_option("--users-per-strategy", emp_users, "skill users per strategy");
  emp->add_option("--random-users", emp_random, "random users");
  emp->add_option("--burn-in", emp_burn, "matches held out for history");
  emp->add_option("--seed", emp_seed, "RNG seed");
  emp->add_option("--out", emp_out, "output CSV");

  // regress
  auto* reg = app.add_subcommand("regress", "OLS fit of a results CSV");
  std::string reg_in, reg_model, reg_out;
  reg->add_option("--in", reg_in, "input CSV")->required();
  reg->add_option("--model", reg_model, "formula, e.g. \"gain ~ E + C + C2\"")->required();
  reg->add_option("--out", reg_out, "optional report file");

  // fixtures
  auto* fix = app.add_subcommand("fixtures", "generate a synthetic scorecard fixture");
  std::size_t fix_matches = 10, fix_players = 30;
  std::int64_t fix_seed = -1;
  std::string fix_dir = ".";
  fix->add_option("--matches", fix_matches, "matches to generate");
  fix->add_option("--players", fix_players, "registered players (>= 22)");
  fix->add_option("--seed", fix_seed, "RNG seed");
  fix->add_option("--out-dir", fix_dir, "output directory");

  // render
  auto* ren = app.add_subcommand("render", "render a CSV as a minimal SVG line chart");
  std::string ren_in, ren_x, ren_y, ren_series, ren_out = "chart.svg";
  ren->add_option("csv", ren_in, "input CSV")->required();
  ren->add_option("--x", ren_x, "x column")->required();
  ren->add_option("--y", ren_y, "y column")->required();
  ren->add_option("--series", ren_series, "optional series column");
  ren->add_option("--out", ren_out, "output SVG");

  // Let --threads appear after the subcommand name.
  for (CLI::App* sub : {sim, swp, imp, emp, reg, fix, ren}) sub->fallthrough();

  try {
    app.parse(argc, argv);
    if (sim->parsed())
      return cmd_simulate(sim_preset, sim_tau, sim_beta, sim_rho, sim_users, sim_iters, sim_wp,
                          sim_seed, sim_out, threads);
    if (swp->parsed()) return cmd_sweep(swp_spec, swp_out, swp_seed, threads);
    if (imp->parsed())
      return cmd_impact(imp_team, imp_cfg, imp_iters, imp_wp, imp_users, imp_seed, imp_out,
                        threads);
    if (emp->parsed())
      return cmd_empirical(emp_sc, emp_ca, emp_experts, emp_common, emp_impact, emp_iters,
                           emp_users, emp_random, emp_burn, emp_seed, emp_out, threads);
    if (reg->parsed()) return cmd_regress(reg_in, reg_model, reg_out);
    if (fix->parsed()) return cmd_fixtures(fix_matches, fix_players, fix_seed, fix_dir);
    if (ren->parsed()) return cmd_render(ren_in, ren_x, ren_y, ren_series, ren_out);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help / --version
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const sg::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << "\n";
    return 2;
  } catch (const sg::DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 3;
  } catch (const sg::NumericalError& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return 4;
  }
}
