#include "skillgauge/agents.hpp"

#include <cmath>

#include "skillgauge/errors.hpp"
#include "skillgauge/rng.hpp"

namespace skillgauge {

namespace {
constexpr double kAlphaFloor = 1e-6;

void check_pi(const std::vector<double>& pi) {
  if (pi.empty()) throw ConfigError("probability vector is empty");
  double sum = 0.0;
  for (double p : pi) {
    if (p < 0.0) throw ConfigError("probability vector has a negative entry");
    sum += p;
  }
  if (sum <= 0.0) throw ConfigError("probability vector is all zero");
}
}  // namespace

std::size_t AgentPopulation::n_analytical() const {
  return static_cast<std::size_t>(std::llround(tau * static_cast<double>(n_users)));
}

AgentPopulation AgentPopulation::make(std::size_t n_users, double tau, double beta, double delta,
                                      std::size_t n_teams) {
  if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
  AgentPopulation pop;
  pop.n_users = n_users;
  pop.tau = tau;
  pop.beta = beta;
  pop.delta = delta;
  pop.alpha = calibrate_alpha(n_teams, delta, beta);
  return pop;
}

double calibrate_alpha(std::size_t n, double delta, double beta) {
  if (n < 1) throw ConfigError("team count must be >= 1");
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  if (!(beta > 0.0 && beta < 1.0)) throw ConfigError("beta must lie in (0, 1)");
  const double alpha = static_cast<double>(n) / (4.0 * delta * beta * beta) - 1.0;
  return alpha > kAlphaFloor ? alpha : kAlphaFloor;
}

Belief sample_belief(const std::vector<double>& pi, double alpha, std::uint64_t seed) {
  check_pi(pi);
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  Rng rng(seed);
  std::vector<double> conc(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) conc[i] = alpha * pi[i];
  return Belief{rng.dirichlet(conc)};
}

std::size_t choose_analytical(const Belief& belief, std::uint64_t seed) {
  check_pi(belief.p);
  Rng rng(seed);
  double sum = 0.0;
  for (double p : belief.p) sum += p;
  double u = rng.uniform() * sum;
  for (std::size_t i = 0; i < belief.p.size(); ++i) {
    u -= belief.p[i];
    if (u < 0.0) return i;
  }
  return belief.p.size() - 1;
}

std::size_t choose_random(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("team count must be >= 1");
  Rng rng(seed);
  return static_cast<std::size_t>(rng.uniform_index(n));
}

SelectionCounts allocate_selections(const AgentPopulation& pop, const std::vector<double>& pi,
                                    std::uint64_t seed) {
  check_pi(pi);
  const std::size_t n_teams = pi.size();
  SelectionCounts counts;
  counts.analytical.assign(n_teams, 0);
  counts.random.assign(n_teams, 0);
  const std::size_t n_ana = pop.n_analytical();
  for (std::size_t u = 0; u < pop.n_users; ++u) {
    const std::uint64_t user_seed = derive_seed(seed, u);
    if (u < n_ana) {
      Rng rng(user_seed);
      std::vector<double> conc(n_teams);
      for (std::size_t i = 0; i < n_teams; ++i) conc[i] = pop.alpha * pi[i];
      const std::vector<double> p = rng.dirichlet(conc);
      double v = rng.uniform();
      std::size_t pick = n_teams - 1;
      for (std::size_t i = 0; i < n_teams; ++i) {
        v -= p[i];
        if (v < 0.0) {
          pick = i;
          break;
        }
      }
      ++counts.analytical[pick];
    } else {
      Rng rng(user_seed);
      ++counts.random[rng.uniform_index(n_teams)];
    }
  }
  return counts;
}

}  // namespace skillgauge
