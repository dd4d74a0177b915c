#include "skillgauge/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "skillgauge/csv.hpp"
#include "skillgauge/errors.hpp"
#include "skillgauge/mathx.hpp"
#include "skillgauge/parallel.hpp"
#include "skillgauge/rng.hpp"

namespace skillgauge {

const std::vector<std::string> kUserStrategyNames = {"OneThirdForm", "TwoThirdForm",
                                                     "StrictForm"};
const std::vector<std::pair<double, double>> kUserStrategyWeights = {
    {1.0 / 3.0, 2.0 / 3.0}, {2.0 / 3.0, 1.0 / 3.0}, {1.0, 0.0}};

void ScorecardRow::validate() const {
  if (runs < 0 || balls < 0 || fours < 0 || sixes < 0 || maidens < 0 || runs_conceded < 0 ||
      wickets < 0 || catches < 0 || stumpings < 0 || runouts < 0 || overs < 0)
    throw DataError("negative count in scorecard row for " + player_id);
}

void ExpertTeam::validate() const {
  if (players.size() != 11) throw ConfigError("expert team must have exactly 11 players");
  std::set<std::string> distinct(players.begin(), players.end());
  if (distinct.size() != 11) throw ConfigError("expert team has duplicate players");
  if (captain == vice_captain) throw ConfigError("captain and vice-captain must differ");
  if (!distinct.count(captain) || !distinct.count(vice_captain))
    throw ConfigError("captain and vice-captain must belong to the team");
}

std::string to_string(ExpertStrategy s) {
  switch (s) {
    case ExpertStrategy::CareerPoints: return "CareerPoints";
    case ExpertStrategy::MA5: return "MA5";
    case ExpertStrategy::TournamentPoints: return "TournamentPoints";
    case ExpertStrategy::MeanVarOptim: return "MeanVarOptim";
  }
  throw ConfigError("unknown expert strategy");
}

double fantasy_points(const ScorecardRow& row, const ScoringRules& rules) {
  row.validate();
  if (!row.played) return 0.0;
  double pts = rules.played;
  pts += row.runs * rules.run + row.fours * rules.boundary_four + row.sixes * rules.six;
  if (row.runs >= 50) pts += rules.fifty_bonus;
  if (row.runs >= 100) pts += rules.hundred_bonus;
  pts += row.wickets * rules.wicket;
  if (row.wickets >= 3) pts += rules.three_wicket_bonus;
  if (row.wickets >= 5) pts += rules.five_wicket_bonus;
  pts += row.maidens * rules.maiden;
  pts += row.catches * rules.catch_taken + row.stumpings * rules.stumping +
         row.runouts * rules.runout;
  return pts;
}

PlayerMetrics compute_metrics(const std::vector<double>& points_history, std::size_t window,
                              double lambda, std::size_t prior_matches,
                              double prior_points_total) {
  PlayerMetrics m;
  const std::size_t n_t = points_history.size();
  const std::size_t n_all = n_t + prior_matches;
  if (n_all == 0) return m;

  double tournament_sum = 0.0;
  for (double p : points_history) tournament_sum += p;
  m.career_points = (prior_points_total + tournament_sum) / static_cast<double>(n_all);
  if (n_t == 0) return m;

  m.tournament_points = tournament_sum / static_cast<double>(n_t);

  const std::size_t w = std::min(window, n_t);
  double form_sum = 0.0;
  for (std::size_t i = n_t - w; i < n_t; ++i) form_sum += points_history[i];
  m.form = form_sum / static_cast<double>(w);

  const std::size_t w3 = std::min<std::size_t>(3, n_t);
  std::vector<double> recent(points_history.end() - w3, points_history.end());
  m.mean_var = mean(recent) - lambda * sample_sd(recent);
  return m;
}

namespace {

double metric_or_lowest(const std::optional<double>& v) {
  return v ? *v : -std::numeric_limits<double>::infinity();
}

double strategy_metric(const Candidate& c, ExpertStrategy s) {
  switch (s) {
    case ExpertStrategy::CareerPoints: return metric_or_lowest(c.metrics.career_points);
    case ExpertStrategy::MA5: return metric_or_lowest(c.metrics.form);
    case ExpertStrategy::TournamentPoints: return metric_or_lowest(c.metrics.tournament_points);
    case ExpertStrategy::MeanVarOptim: return metric_or_lowest(c.metrics.mean_var);
  }
  throw ConfigError("unknown expert strategy");
}

// (metric desc, player_id asc) ordering used everywhere for determinism.
void sort_by_metric(std::vector<const Candidate*>& v, ExpertStrategy s) {
  std::sort(v.begin(), v.end(), [s](const Candidate* a, const Candidate* b) {
    const double ma = strategy_metric(*a, s);
    const double mb = strategy_metric(*b, s);
    if (ma != mb) return ma > mb;
    return a->player_id < b->player_id;
  });
}

}  // namespace

std::vector<std::string> select_common_core(const std::vector<Candidate>& pool, std::size_t n,
                                            const RoleConstraints& constraints) {
  if (pool.size() < n) throw ConfigError("candidate pool smaller than requested core");
  if (n == 0) return {};

  std::vector<const Candidate*> sorted;
  sorted.reserve(pool.size());
  for (const auto& c : pool) sorted.push_back(&c);
  sort_by_metric(sorted, ExpertStrategy::CareerPoints);

  if (constraints.empty()) {
    std::vector<std::string> core;
    for (std::size_t i = 0; i < n; ++i) core.push_back(sorted[i]->player_id);
    return core;
  }

  // Feasibility diagnostics up front so infeasibility names the constraint.
  std::map<std::string, std::size_t> available;
  for (const auto& c : pool) ++available[c.role];
  std::size_t min_total = 0;
  for (const auto& [role, mm] : constraints.limits) {
    if (available[role] < mm.first)
      throw ConfigError("infeasible core: need at least " + std::to_string(mm.first) + " of role " +
                        role + " but pool has " + std::to_string(available[role]));
    min_total += mm.first;
  }
  if (min_total > n)
    throw ConfigError("infeasible core: role minimums exceed core size " + std::to_string(n));

  // Exact search over n-subsets in ranking order; the first optimum found is
  // the deterministic tie-break winner.
  const std::size_t m = sorted.size();
  std::vector<std::size_t> pick, best_pick;
  double best_sum = -std::numeric_limits<double>::infinity();
  std::map<std::string, std::size_t> role_count;

  // Prefix sums of career metric for an upper-bound prune.
  std::vector<double> metric(m), prefix(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    metric[i] = strategy_metric(*sorted[i], ExpertStrategy::CareerPoints);
    prefix[i + 1] = prefix[i] + std::max(metric[i], 0.0);
  }

  auto feasible_completion = [&](std::size_t next) {
    // Each unmet minimum must still be coverable from sorted[next..).
    std::size_t needed = 0;
    for (const auto& [role, mm] : constraints.limits) {
      const std::size_t have = role_count.count(role) ? role_count[role] : 0;
      if (have < mm.first) {
        std::size_t remaining = 0;
        for (std::size_t i = next; i < m; ++i)
          if (sorted[i]->role == role) ++remaining;
        if (have + remaining < mm.first) return false;
        needed += mm.first - have;
      }
    }
    return pick.size() + needed <= n;
  };

  auto minimums_met = [&] {
    for (const auto& [role, mm] : constraints.limits) {
      const auto it = role_count.find(role);
      if ((it == role_count.end() ? 0 : it->second) < mm.first) return false;
    }
    return true;
  };

  std::function<void(std::size_t, double)> search = [&](std::size_t next, double sum) {
    if (pick.size() == n) {
      if (!minimums_met()) return;
      if (sum > best_sum) {
        best_sum = sum;
        best_pick = pick;
      }
      return;
    }
    if (m - next < n - pick.size()) return;
    if (sum + prefix[m] - prefix[next] <= best_sum) return;  // optimistic bound
    if (!feasible_completion(next)) return;
    // Take sorted[next] if the max constraint allows it.
    const std::string& role = sorted[next]->role;
    const auto it = constraints.limits.find(role);
    const bool max_ok = it == constraints.limits.end() || role_count[role] < it->second.second;
    if (max_ok) {
      pick.push_back(next);
      ++role_count[role];
      search(next + 1, sum + metric[next]);
      --role_count[role];
      pick.pop_back();
    }
    search(next + 1, sum);
  };
  search(0, 0.0);

  if (best_pick.empty() && n > 0)
    throw ConfigError("infeasible core: role maximums leave fewer than " + std::to_string(n) +
                      " eligible players");
  std::vector<std::string> core;
  for (std::size_t i : best_pick) core.push_back(sorted[i]->player_id);
  return core;
}

ExpertTeam build_expert_team(ExpertStrategy strategy, const std::vector<std::string>& core,
                             const std::vector<Candidate>& pool, std::size_t n_common) {
  if (core.size() != n_common) throw ConfigError("core size must equal n_common");
  if (n_common > 11) throw ConfigError("n_common must be <= 11");

  const std::set<std::string> core_set(core.begin(), core.end());
  std::vector<const Candidate*> free_pool, eleven;
  std::map<std::string, const Candidate*> by_id;
  for (const auto& c : pool) by_id[c.player_id] = &c;
  for (const auto& id : core) {
    const auto it = by_id.find(id);
    if (it == by_id.end()) throw ConfigError("core player missing from pool: " + id);
    eleven.push_back(it->second);
  }
  for (const auto& c : pool)
    if (!core_set.count(c.player_id)) free_pool.push_back(&c);
  if (free_pool.size() < 11 - n_common) throw ConfigError("pool too small to fill team");

  sort_by_metric(free_pool, strategy);
  for (std::size_t i = 0; i < 11 - n_common; ++i) eleven.push_back(free_pool[i]);

  std::vector<const Candidate*> leaders = eleven;
  sort_by_metric(leaders, strategy);

  ExpertTeam team;
  team.strategy = to_string(strategy);
  for (const auto* c : eleven) team.players.push_back(c->player_id);
  std::sort(team.players.begin(), team.players.end());
  team.captain = leaders[0]->player_id;
  team.vice_captain = leaders[1]->player_id;
  team.validate();
  return team;
}

double user_team_score(const ExpertTeam& team,
                       const std::map<std::string, PlayerMetrics>& metrics, double w_form,
                       double w_career, double captain_mult, double vice_mult) {
  double score = 0.0;
  for (const auto& id : team.players) {
    double mult = 1.0;
    if (id == team.captain) mult = captain_mult;
    else if (id == team.vice_captain) mult = vice_mult;
    const auto it = metrics.find(id);
    if (it == metrics.end()) continue;
    const double form = it->second.form.value_or(0.0);
    const double career = it->second.career_points.value_or(0.0);
    score += mult * (w_form * form + w_career * career);
  }
  return score;
}

std::size_t user_pick(const std::vector<double>& team_scores, double p_random,
                      std::uint64_t seed) {
  if (team_scores.empty()) throw ConfigError("no teams to pick from");
  Rng rng(seed);
  if (rng.uniform() < p_random)
    return static_cast<std::size_t>(rng.uniform_index(team_scores.size()));
  std::size_t best = 0;
  for (std::size_t i = 1; i < team_scores.size(); ++i)
    if (team_scores[i] > team_scores[best]) best = i;
  return best;
}

double team_total(const ExpertTeam& team, const std::map<std::string, double>& match_points,
                  double captain_mult, double vice_mult) {
  double total = 0.0;
  for (const auto& id : team.players) {
    const auto it = match_points.find(id);
    const double pts = it == match_points.end() ? 0.0 : it->second;
    double mult = 1.0;
    if (id == team.captain) mult = captain_mult;
    else if (id == team.vice_captain) mult = vice_mult;
    total += mult * pts;
  }
  return total;
}

double impact_augment(const std::vector<double>& member_points, double impact_points) {
  if (member_points.empty()) throw ConfigError("team has no scored members");
  double total = 0.0;
  double lowest = member_points[0];
  for (double p : member_points) {
    total += p;
    lowest = std::min(lowest, p);
  }
  return total - lowest + std::max(lowest, impact_points);
}

GainMetrics gain_metrics(const std::vector<double>& strategy_means,
                         const std::vector<double>& random_means) {
  if (strategy_means.size() != random_means.size())
    throw ConfigError("match set mismatch between strategy and random results");
  if (strategy_means.empty()) throw ConfigError("no matches in gain computation");
  GainMetrics g;
  g.matchwise.reserve(strategy_means.size());
  for (std::size_t i = 0; i < strategy_means.size(); ++i) {
    g.matchwise.push_back(strategy_means[i] - random_means[i]);
    g.tournament += g.matchwise.back();
  }
  return g;
}

Covariates match_covariates(const std::vector<ExpertTeam>& teams,
                            const std::map<std::string, double>& match_points,
                            std::size_t n_common, double captain_mult, double vice_mult) {
  if (teams.size() < 2) throw ConfigError("covariates need at least 2 teams");
  Covariates cov;
  cov.n_experts = static_cast<double>(teams.size());
  cov.common_prescribed = static_cast<double>(n_common);

  std::set<std::string> common(teams[0].players.begin(), teams[0].players.end());
  for (std::size_t t = 1; t < teams.size(); ++t) {
    std::set<std::string> next;
    for (const auto& id : teams[t].players)
      if (common.count(id)) next.insert(id);
    common = std::move(next);
  }
  cov.common_actual = static_cast<double>(common.size());

  std::vector<double> totals;
  std::vector<double> within;
  for (const auto& team : teams) {
    totals.push_back(team_total(team, match_points, captain_mult, vice_mult));
    std::vector<double> member;
    for (const auto& id : team.players) {
      const auto it = match_points.find(id);
      member.push_back(it == match_points.end() ? 0.0 : it->second);
    }
    within.push_back(sample_variance(member));
  }
  cov.between_team_var = sample_variance(totals);
  cov.within_team_var = mean(within);
  return cov;
}

// ---------------------------------------------------------------------------

void EmpiricalConfig::validate() const {
  if (n_experts < 2 || n_experts > 4) throw ConfigError("n_experts must be 2, 3 or 4");
  if (n_common < 1 || n_common > 11) throw ConfigError("n_common must lie in [1, 11]");
  if (users_per_strategy < 1 || random_users < 1) throw ConfigError("user counts must be >= 1");
  if (n_iterations < 1) throw ConfigError("iteration count must be >= 1");
  if (!(p_random >= 0.0 && p_random <= 1.0)) throw ConfigError("p_random must lie in [0, 1]");
  if (form_window < 1) throw ConfigError("form window must be >= 1");
}

namespace {

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw DataError("bad boolean '" + s + "' in " + what);
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("bad number '" + s + "' in " + what);
  }
}

}  // namespace

Dataset load_dataset(const std::string& scorecards_path, const std::string& careers_path) {
  Dataset data;
  const ParsedCsv sc = read_csv(scorecards_path);
  const std::size_t c_match = sc.column("match_id");
  const std::size_t c_player = sc.column("player_id");
  const std::size_t c_side = sc.column("team_side");
  const std::size_t c_runs = sc.column("runs");
  const std::size_t c_balls = sc.column("balls");
  const std::size_t c_fours = sc.column("fours");
  const std::size_t c_sixes = sc.column("sixes");
  const std::size_t c_dis = sc.column("dismissed");
  const std::size_t c_overs = sc.column("overs");
  const std::size_t c_maid = sc.column("maidens");
  const std::size_t c_conc = sc.column("runs_conceded");
  const std::size_t c_wkts = sc.column("wickets");
  const std::size_t c_cat = sc.column("catches");
  const std::size_t c_stp = sc.column("stumpings");
  const std::size_t c_ro = sc.column("runouts");
  const std::size_t c_played = sc.column("played");

  std::map<std::string, std::size_t> match_index;
  for (const auto& cells : sc.rows) {
    ScorecardRow row;
    row.match_id = cells[c_match];
    row.player_id = cells[c_player];
    row.team_side = cells[c_side];
    row.runs = static_cast<int>(parse_num(cells[c_runs], "runs"));
    row.balls = static_cast<int>(parse_num(cells[c_balls], "balls"));
    row.fours = static_cast<int>(parse_num(cells[c_fours], "fours"));
    row.sixes = static_cast<int>(parse_num(cells[c_sixes], "sixes"));
    row.dismissed = parse_bool(cells[c_dis], "dismissed");
    row.overs = parse_num(cells[c_overs], "overs");
    row.maidens = static_cast<int>(parse_num(cells[c_maid], "maidens"));
    row.runs_conceded = static_cast<int>(parse_num(cells[c_conc], "runs_conceded"));
    row.wickets = static_cast<int>(parse_num(cells[c_wkts], "wickets"));
    row.catches = static_cast<int>(parse_num(cells[c_cat], "catches"));
    row.stumpings = static_cast<int>(parse_num(cells[c_stp], "stumpings"));
    row.runouts = static_cast<int>(parse_num(cells[c_ro], "runouts"));
    row.played = parse_bool(cells[c_played], "played");
    row.validate();

    auto [it, inserted] = match_index.emplace(row.match_id, data.matches.size());
    if (inserted) data.matches.push_back({row.match_id, {}});
    data.matches[it->second].rows.push_back(std::move(row));
  }
  if (data.matches.empty()) throw DataError("scorecard file has no rows");

  const ParsedCsv ca = read_csv(careers_path);
  const std::size_t k_id = ca.column("player_id");
  const std::size_t k_name = ca.column("name");
  const std::size_t k_role = ca.column("role");
  const std::size_t k_m = ca.column("prior_matches");
  const std::size_t k_t = ca.column("prior_points_total");
  for (const auto& cells : ca.rows) {
    PlayerCareer career;
    career.player_id = cells[k_id];
    career.name = cells[k_name];
    career.role = cells[k_role];
    career.prior_matches = static_cast<std::size_t>(parse_num(cells[k_m], "prior_matches"));
    career.prior_points_total = parse_num(cells[k_t], "prior_points_total");
    if (!data.careers.emplace(career.player_id, career).second)
      throw DataError("duplicate player_id in career data: " + career.player_id);
  }
  return data;
}

namespace {

const std::vector<ExpertStrategy> kExpertOrder = {
    ExpertStrategy::CareerPoints, ExpertStrategy::MA5, ExpertStrategy::TournamentPoints,
    ExpertStrategy::MeanVarOptim};

}  // namespace

EmpiricalResult run_empirical(const Dataset& data, const EmpiricalConfig& cfg,
                              unsigned threads) {
  cfg.validate();
  if (data.matches.size() <= cfg.burn_in)
    throw DataError("not enough matches after burn-in");

  EmpiricalResult result;
  result.strategy_names = kUserStrategyNames;
  const std::size_t n_strat = kUserStrategyNames.size();

  // Per-player tournament points history, filled as matches are replayed.
  std::map<std::string, std::vector<double>> history;
  for (std::size_t mi = 0; mi < cfg.burn_in; ++mi)
    for (const auto& row : data.matches[mi].rows)
      if (row.played) history[row.player_id].push_back(fantasy_points(row, cfg.rules));

  for (std::size_t mi = cfg.burn_in; mi < data.matches.size(); ++mi) {
    const MatchData& match = data.matches[mi];

    // Candidates with pre-match metrics; sorted by id for determinism.
    std::vector<Candidate> pool;
    std::map<std::string, PlayerMetrics> metrics;
    for (const auto& row : match.rows) {
      Candidate c;
      c.player_id = row.player_id;
      const auto career = data.careers.find(row.player_id);
      c.role = career != data.careers.end() ? career->second.role : "BAT";
      const auto hist = history.find(row.player_id);
      const std::vector<double> empty;
      c.metrics = compute_metrics(
          hist != history.end() ? hist->second : empty, cfg.form_window, cfg.lambda,
          career != data.careers.end() ? career->second.prior_matches : 0,
          career != data.careers.end() ? career->second.prior_points_total : 0.0);
      metrics[c.player_id] = c.metrics;
      pool.push_back(std::move(c));
    }
    std::sort(pool.begin(), pool.end(),
              [](const Candidate& a, const Candidate& b) { return a.player_id < b.player_id; });

    const std::vector<std::string> core =
        select_common_core(pool, cfg.n_common, cfg.constraints);
    std::vector<ExpertTeam> teams;
    for (std::size_t s = 0; s < cfg.n_experts; ++s)
      teams.push_back(build_expert_team(kExpertOrder[s], core, pool, cfg.n_common));

    // Realized per-player points for this match.
    std::map<std::string, double> match_points;
    for (const auto& row : match.rows)
      match_points[row.player_id] = row.played ? fantasy_points(row, cfg.rules) : 0.0;

    // Plain team totals and per-team member contribution vectors.
    std::vector<double> plain_totals;
    std::vector<std::vector<double>> contributions;  // with C/VC multipliers
    for (const auto& team : teams) {
      plain_totals.push_back(team_total(team, match_points, cfg.captain_mult, cfg.vice_mult));
      std::vector<double> member;
      for (const auto& id : team.players) {
        double mult = 1.0;
        if (id == team.captain) mult = cfg.captain_mult;
        else if (id == team.vice_captain) mult = cfg.vice_mult;
        member.push_back(mult * match_points[id]);
      }
      contributions.push_back(std::move(member));
    }

    // Impact candidates per team: the match squad minus the team, id order.
    std::vector<std::vector<std::string>> impact_candidates(teams.size());
    std::vector<std::vector<double>> impact_totals(teams.size());  // augmented totals
    if (cfg.impact) {
      for (std::size_t t = 0; t < teams.size(); ++t) {
        const std::set<std::string> members(teams[t].players.begin(), teams[t].players.end());
        for (const auto& c : pool)
          if (!members.count(c.player_id)) impact_candidates[t].push_back(c.player_id);
        if (impact_candidates[t].empty())
          throw DataError("no impact candidates outside team in match " + match.match_id);
        for (const auto& id : impact_candidates[t])
          impact_totals[t].push_back(impact_augment(contributions[t], match_points[id]));
      }
    }

    // Deterministic per-strategy picks: team by weighted metric score, then
    // (with impact on) the candidate maximizing the same weighted metric.
    std::vector<std::size_t> det_team(n_strat);
    std::vector<double> det_points(n_strat);
    for (std::size_t s = 0; s < n_strat; ++s) {
      const auto [w_form, w_career] = kUserStrategyWeights[s];
      std::vector<double> scores;
      for (const auto& team : teams)
        scores.push_back(user_team_score(team, metrics, w_form, w_career, cfg.captain_mult,
                                         cfg.vice_mult));
      std::size_t best = 0;
      for (std::size_t t = 1; t < teams.size(); ++t)
        if (scores[t] > scores[best]) best = t;
      det_team[s] = best;
      if (!cfg.impact) {
        det_points[s] = plain_totals[best];
      } else {
        const auto& cands = impact_candidates[best];
        std::size_t pick = 0;
        double pick_score = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < cands.size(); ++j) {
          const auto& m = metrics[cands[j]];
          const double score =
              w_form * m.form.value_or(0.0) + w_career * m.career_points.value_or(0.0);
          if (score > pick_score) {
            pick_score = score;
            pick = j;
          }
        }
        det_points[s] = impact_totals[best][pick];
      }
    }

    // Simulate the user population; per-iteration means reduced sequentially.
    const std::uint64_t match_seed = derive_seed(cfg.seed, mi);
    std::vector<std::vector<double>> strat_sums(cfg.n_iterations,
                                                std::vector<double>(n_strat, 0.0));
    std::vector<double> random_sums(cfg.n_iterations, 0.0);
    parallel_chunks(cfg.n_iterations, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t it = begin; it < end; ++it) {
        const std::uint64_t iter_seed = derive_seed(match_seed, it);
        auto random_entry_points = [&](Rng& rng) {
          const std::size_t t = static_cast<std::size_t>(rng.uniform_index(teams.size()));
          if (!cfg.impact) return plain_totals[t];
          const std::size_t j =
              static_cast<std::size_t>(rng.uniform_index(impact_candidates[t].size()));
          return impact_totals[t][j];
        };
        for (std::size_t s = 0; s < n_strat; ++s) {
          const std::uint64_t strat_seed = derive_seed(iter_seed, s);
          for (std::size_t u = 0; u < cfg.users_per_strategy; ++u) {
            Rng rng(derive_seed(strat_seed, u));
            strat_sums[it][s] +=
                rng.uniform() < cfg.p_random ? random_entry_points(rng) : det_points[s];
          }
        }
        const std::uint64_t random_seed = derive_seed(iter_seed, n_strat);
        for (std::size_t u = 0; u < cfg.random_users; ++u) {
          Rng rng(derive_seed(random_seed, u));
          random_sums[it] += random_entry_points(rng);
        }
      }
    });

    MatchSimResult mr;
    mr.match_id = match.match_id;
    mr.teams = teams;
    mr.team_points = plain_totals;
    mr.strategy_mean_points.assign(n_strat, 0.0);
    for (std::size_t it = 0; it < cfg.n_iterations; ++it) {
      for (std::size_t s = 0; s < n_strat; ++s) mr.strategy_mean_points[s] += strat_sums[it][s];
      mr.random_mean_points += random_sums[it];
    }
    const double strat_n = static_cast<double>(cfg.n_iterations * cfg.users_per_strategy);
    const double rand_n = static_cast<double>(cfg.n_iterations * cfg.random_users);
    for (double& v : mr.strategy_mean_points) v /= strat_n;
    mr.random_mean_points /= rand_n;
    mr.covariates = match_covariates(teams, match_points, cfg.n_common, cfg.captain_mult,
                                     cfg.vice_mult);
    result.matches.push_back(std::move(mr));

    for (const auto& row : match.rows)
      if (row.played) history[row.player_id].push_back(fantasy_points(row, cfg.rules));
  }

  std::vector<double> random_means;
  for (const auto& mr : result.matches) random_means.push_back(mr.random_mean_points);
  for (std::size_t s = 0; s < n_strat; ++s) {
    std::vector<double> strat_means;
    for (const auto& mr : result.matches) strat_means.push_back(mr.strategy_mean_points[s]);
    result.gains.push_back(gain_metrics(strat_means, random_means));
  }
  return result;
}

}  // namespace skillgauge
