#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace skillgauge {

/// Configurable fantasy scoring table. The defaults are the ones every
/// shipped test and preset uses.
struct ScoringRules {
  double run = 1;
  double boundary_four = 1;
  double six = 2;
  double fifty_bonus = 8;
  double hundred_bonus = 16;
  double wicket = 25;
  double three_wicket_bonus = 4;
  double five_wicket_bonus = 8;
  double maiden = 8;
  double catch_taken = 8;
  double stumping = 12;
  double runout = 6;
  double played = 4;
};

/// One player-match performance line.
struct ScorecardRow {
  std::string match_id;
  std::string player_id;
  std::string team_side;
  int runs = 0;
  int balls = 0;
  int fours = 0;
  int sixes = 0;
  bool dismissed = false;
  double overs = 0;
  int maidens = 0;
  int runs_conceded = 0;
  int wickets = 0;
  int catches = 0;
  int stumpings = 0;
  int runouts = 0;
  bool played = false;

  void validate() const;
};

struct PlayerCareer {
  std::string player_id;
  std::string name;
  std::string role;  // WK | BAT | BOWL | AR
  std::size_t prior_matches = 0;
  double prior_points_total = 0.0;
};

/// Player evaluation metrics; absent when the player has no qualifying
/// history at all.
struct PlayerMetrics {
  std::optional<double> career_points;
  std::optional<double> form;
  std::optional<double> tournament_points;
  std::optional<double> mean_var;
};

struct ExpertTeam {
  std::vector<std::string> players;  // exactly 11, distinct
  std::string captain;
  std::string vice_captain;
  std::string strategy;

  void validate() const;
};

enum class ExpertStrategy { CareerPoints, MA5, TournamentPoints, MeanVarOptim };
std::string to_string(ExpertStrategy s);

/// Optional min/max role-composition constraints on the common core.
struct RoleConstraints {
  // role -> (min, max); roles not listed are unconstrained.
  std::map<std::string, std::pair<std::size_t, std::size_t>> limits;

  bool empty() const { return limits.empty(); }
};

struct MatchData {
  std::string match_id;
  std::vector<ScorecardRow> rows;
};

struct Dataset {
  std::vector<MatchData> matches;  // chronological order
  std::map<std::string, PlayerCareer> careers;
};

/// Candidate for team construction: a player with role and current metrics.
struct Candidate {
  std::string player_id;
  std::string role;
  PlayerMetrics metrics;
};

double fantasy_points(const ScorecardRow& row, const ScoringRules& rules);

/// Metrics from an in-tournament points history (chronological) plus an
/// optional career aggregate folded into the career mean. Form uses the last
/// `window` appearances (or all available); MeanVar is form over the last 3
/// minus lambda * SD over the last 3 (SD of one point is 0).
PlayerMetrics compute_metrics(const std::vector<double>& points_history, std::size_t window,
                              double lambda, std::size_t prior_matches = 0,
                              double prior_points_total = 0.0);

/// The n-subset of the candidate pool maximizing total career points subject
/// to the role constraints; exact search, deterministic tie-break by
/// (career points desc, player_id asc).
std::vector<std::string> select_common_core(const std::vector<Candidate>& pool, std::size_t n,
                                            const RoleConstraints& constraints = {});

/// Fills the 11 - core slots by the strategy's ranking metric; captain and
/// vice-captain are the top two by that same metric over the full eleven.
ExpertTeam build_expert_team(ExpertStrategy strategy, const std::vector<std::string>& core,
                             const std::vector<Candidate>& pool, std::size_t n_common);

/// Weighted user score of a team: sum over the eleven (with captain and
/// vice-captain multipliers) of w_form * Form + w_career * CareerPoints.
double user_team_score(const ExpertTeam& team,
                       const std::map<std::string, PlayerMetrics>& metrics, double w_form,
                       double w_career, double captain_mult = 2.0, double vice_mult = 1.5);

/// With probability p_random a uniform pick, otherwise the argmax score
/// (ties broken by lowest index).
std::size_t user_pick(const std::vector<double>& team_scores, double p_random,
                      std::uint64_t seed);

/// Match total of a team: absent players score 0; captain x2, vice x1.5 by
/// default.
double team_total(const ExpertTeam& team, const std::map<std::string, double>& match_points,
                  double captain_mult = 2.0, double vice_mult = 1.5);

/// Replaces the lowest member contribution when the impact player beats it:
/// total - min + max(min, impact).
double impact_augment(const std::vector<double>& member_points, double impact_points);

struct GainMetrics {
  std::vector<double> matchwise;
  double tournament = 0.0;
};

/// Per-match strategy-minus-random point gains and their cumulative sum.
GainMetrics gain_metrics(const std::vector<double>& strategy_means,
                         const std::vector<double>& random_means);

struct Covariates {
  double n_experts = 0;       // E
  double common_actual = 0;   // C
  double common_prescribed = 0;  // C_p
  double between_team_var = 0;   // V_mu
  double within_team_var = 0;    // Sigma_bar^2
};

/// Covariates for one match given the built teams and the realized per-player
/// points.
Covariates match_covariates(const std::vector<ExpertTeam>& teams,
                            const std::map<std::string, double>& match_points,
                            std::size_t n_common, double captain_mult = 2.0,
                            double vice_mult = 1.5);

// ---------------------------------------------------------------------------
// Full pipeline

struct EmpiricalConfig {
  std::size_t n_experts = 4;  // expert strategies used, in enum order
  std::size_t n_common = 7;
  bool impact = false;
  std::size_t users_per_strategy = 1000;
  std::size_t random_users = 16000;
  std::size_t n_iterations = 1;  // user-population redraws per match
  double p_random = 0.05;
  std::size_t form_window = 5;
  double lambda = 0.5;
  double captain_mult = 2.0;
  double vice_mult = 1.5;
  std::size_t burn_in = 3;  // matches skipped at the start for history
  ScoringRules rules;
  RoleConstraints constraints;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MatchSimResult {
  std::string match_id;
  std::vector<ExpertTeam> teams;
  std::vector<double> team_points;          // impact-off totals
  std::vector<double> strategy_mean_points;  // one per user strategy
  double random_mean_points = 0.0;
  Covariates covariates;
};

struct EmpiricalResult {
  std::vector<std::string> strategy_names;  // user strategies
  std::vector<MatchSimResult> matches;
  std::vector<GainMetrics> gains;  // one per user strategy
};

extern const std::vector<std::string> kUserStrategyNames;  // OneThirdForm, TwoThirdForm, StrictForm
extern const std::vector<std::pair<double, double>> kUserStrategyWeights;  // (w_form, w_career)

Dataset load_dataset(const std::string& scorecards_path, const std::string& careers_path);

EmpiricalResult run_empirical(const Dataset& data, const EmpiricalConfig& cfg,
                              unsigned threads = 1);

}  // namespace skillgauge
