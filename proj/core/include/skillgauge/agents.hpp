#pragma once

#include <cstdint>
#include <vector>

namespace skillgauge {

/// Simulated participant population: a fraction tau of analytical users whose
/// Dirichlet belief concentration is calibrated from (beta, delta), the rest
/// choosing uniformly at random.
struct AgentPopulation {
  std::size_t n_users = 0;
  double tau = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  double alpha = 0.0;

  std::size_t n_analytical() const;
  std::size_t n_random() const { return n_users - n_analytical(); }

  /// Population with alpha auto-derived from the concentration bound.
  static AgentPopulation make(std::size_t n_users, double tau, double beta, double delta,
                              std::size_t n_teams);
};

struct Belief {
  std::vector<double> p;
};

/// Per-team selection counts split by agent type.
struct SelectionCounts {
  std::vector<std::size_t> analytical;
  std::vector<std::size_t> random;

  std::size_t total(std::size_t team) const { return analytical[team] + random[team]; }
};

/// Chebyshev + union bound concentration: n/(4*delta*beta^2) - 1, floored at
/// a small positive value when the formula is nonpositive.
double calibrate_alpha(std::size_t n, double delta, double beta);

/// Draws p ~ Dirichlet(alpha * pi). Zero components of pi stay exactly zero.
Belief sample_belief(const std::vector<double>& pi, double alpha, std::uint64_t seed);

/// Multinomial(1, p) team choice.
std::size_t choose_analytical(const Belief& belief, std::uint64_t seed);

/// Uniform team choice.
std::size_t choose_random(std::size_t n, std::uint64_t seed);

/// Allocates every user to a team: analytical users draw an independent
/// belief then sample from it, random users choose uniformly. User u is
/// seeded from (seed, u), so the allocation is order-independent.
SelectionCounts allocate_selections(const AgentPopulation& pop, const std::vector<double>& pi,
                                    std::uint64_t seed);

}  // namespace skillgauge
