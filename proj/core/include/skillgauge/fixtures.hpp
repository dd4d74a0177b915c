#pragma once

#include <cstdint>
#include <string>

#include "skillgauge/empirical.hpp"

namespace skillgauge {

/// Synthetic tournament fixture for desk-scale testing: per-player latent
/// skills drive heterogeneous scorecards so the expert strategies actually
/// disagree.
struct FixtureSpec {
  std::size_t n_matches = 10;
  std::size_t n_players = 30;  // >= 22
  std::uint64_t seed = 0;

  void validate() const;
};

Dataset generate_fixture(const FixtureSpec& spec);

/// Writes the dataset in the documented scorecard / career CSV schemas.
void write_fixture(const Dataset& data, const std::string& scorecards_path,
                   const std::string& careers_path);

}  // namespace skillgauge
