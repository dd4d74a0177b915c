#include "skillgauge/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "skillgauge/csv.hpp"
#include "skillgauge/errors.hpp"
#include "skillgauge/rng.hpp"

namespace skillgauge {

void FixtureSpec::validate() const {
  if (n_matches < 1) throw ConfigError("need at least 1 match");
  if (n_players < 22) throw ConfigError("need at least 22 players");
}

namespace {

struct LatentPlayer {
  std::string id;
  std::string role;
  double bat_skill;   // mean runs when batting
  double bowl_skill;  // wicket propensity in [0, 1]
};

std::string player_name(std::size_t i) {
  std::ostringstream os;
  os << "P" << (i < 10 ? "0" : "") << i;
  return os.str();
}

const char* role_for(std::size_t i) {
  switch (i % 9) {
    case 0: return "WK";
    case 1:
    case 2:
    case 3: return "BAT";
    case 4:
    case 5: return "AR";
    default: return "BOWL";
  }
}

}  // namespace

Dataset generate_fixture(const FixtureSpec& spec) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, 0xF1C7));

  std::vector<LatentPlayer> players;
  Dataset data;
  for (std::size_t i = 0; i < spec.n_players; ++i) {
    LatentPlayer p;
    p.id = player_name(i);
    p.role = role_for(i);
    const bool bats = p.role == "BAT" || p.role == "WK" || p.role == "AR";
    const bool bowls = p.role == "BOWL" || p.role == "AR";
    p.bat_skill = bats ? 18.0 + 30.0 * rng.uniform() : 5.0 + 8.0 * rng.uniform();
    p.bowl_skill = bowls ? 0.25 + 0.4 * rng.uniform() : 0.0;
    players.push_back(p);

    PlayerCareer career;
    career.player_id = p.id;
    career.name = "Player " + std::to_string(i);
    career.role = p.role;
    career.prior_matches = 20 + static_cast<std::size_t>(rng.uniform_index(80));
    const double mean_pts =
        4.0 + p.bat_skill * 1.3 + p.bowl_skill * 70.0 + 4.0 * rng.normal();
    career.prior_points_total =
        std::max(1.0, mean_pts) * static_cast<double>(career.prior_matches);
    data.careers.emplace(career.player_id, career);
  }

  for (std::size_t m = 0; m < spec.n_matches; ++m) {
    Rng mrng(derive_seed(spec.seed, m + 1));
    std::vector<std::size_t> order(spec.n_players);
    for (std::size_t i = 0; i < spec.n_players; ++i) order[i] = i;
    // Fisher-Yates with the match RNG so squads rotate between matches.
    for (std::size_t i = spec.n_players - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(mrng.uniform_index(i + 1));
      std::swap(order[i], order[j]);
    }

    MatchData match;
    std::ostringstream mid;
    mid << "M" << (m < 9 ? "0" : "") << (m + 1);
    match.match_id = mid.str();
    for (std::size_t slot = 0; slot < 22; ++slot) {
      const LatentPlayer& p = players[order[slot]];
      ScorecardRow row;
      row.match_id = match.match_id;
      row.player_id = p.id;
      row.team_side = slot < 11 ? "A" : "B";
      row.played = true;

      // Batting line: per-match form swings around the latent skill.
      const double runs = p.bat_skill * (0.3 + 1.4 * mrng.uniform()) + 4.0 * mrng.normal();
      row.runs = std::max(0, static_cast<int>(std::lround(runs)));
      row.fours = static_cast<int>(mrng.uniform_index(row.runs / 6 + 1));
      row.sixes = static_cast<int>(mrng.uniform_index(row.runs / 14 + 1));
      row.balls = row.runs + 3 + static_cast<int>(mrng.uniform_index(10));
      row.dismissed = mrng.uniform() < 0.6;

      if (p.bowl_skill > 0.0) {
        row.overs = 2 + static_cast<int>(mrng.uniform_index(3));
        int wickets = 0;
        for (int b = 0; b < 4; ++b)
          if (mrng.uniform() < p.bowl_skill * 0.35) ++wickets;
        row.wickets = wickets;
        row.maidens = mrng.uniform() < 0.08 ? 1 : 0;
        row.runs_conceded = 14 + static_cast<int>(mrng.uniform_index(25));
      }
      row.catches = mrng.uniform() < 0.2 ? 1 : 0;
      if (p.role == "WK") row.stumpings = mrng.uniform() < 0.15 ? 1 : 0;
      row.runouts = mrng.uniform() < 0.05 ? 1 : 0;
      match.rows.push_back(std::move(row));
    }
    std::sort(match.rows.begin(), match.rows.end(),
              [](const ScorecardRow& a, const ScorecardRow& b) {
                return a.player_id < b.player_id;
              });
    data.matches.push_back(std::move(match));
  }
  return data;
}

void write_fixture(const Dataset& data, const std::string& scorecards_path,
                   const std::string& careers_path) {
  CsvTable scorecards({"match_id", "player_id", "team_side", "runs", "balls", "fours", "sixes",
                       "dismissed", "overs", "maidens", "runs_conceded", "wickets", "catches",
                       "stumpings", "runouts", "played"});
  for (const auto& match : data.matches) {
    for (const auto& row : match.rows) {
      scorecards.add_row()
          .set(0, row.match_id)
          .set(1, row.player_id)
          .set(2, row.team_side)
          .set(3, static_cast<std::int64_t>(row.runs))
          .set(4, static_cast<std::int64_t>(row.balls))
          .set(5, static_cast<std::int64_t>(row.fours))
          .set(6, static_cast<std::int64_t>(row.sixes))
          .set(7, std::string(row.dismissed ? "1" : "0"))
          .set(8, row.overs)
          .set(9, static_cast<std::int64_t>(row.maidens))
          .set(10, static_cast<std::int64_t>(row.runs_conceded))
          .set(11, static_cast<std::int64_t>(row.wickets))
          .set(12, static_cast<std::int64_t>(row.catches))
          .set(13, static_cast<std::int64_t>(row.stumpings))
          .set(14, static_cast<std::int64_t>(row.runouts))
          .set(15, std::string(row.played ? "1" : "0"));
    }
  }
  scorecards.write(scorecards_path);

  CsvTable careers({"player_id", "name", "role", "prior_matches", "prior_points_total"});
  for (const auto& [id, c] : data.careers) {
    careers.add_row()
        .set(0, c.player_id)
        .set(1, c.name)
        .set(2, c.role)
        .set(3, static_cast<std::uint64_t>(c.prior_matches))
        .set(4, c.prior_points_total);
  }
  careers.write(careers_path);
}

}  // namespace skillgauge
