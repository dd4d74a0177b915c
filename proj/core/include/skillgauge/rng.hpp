#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

#include "skillgauge/errors.hpp"

namespace skillgauge {

namespace detail {
// SplitMix64 output function (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// FNV-1a 64-bit hash; used for artifact checksums and for deriving
/// stable per-axis-value sweep seeds from the value's text.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Derives an independent sub-stream seed from (seed, index). Counter-based,
/// so chunks of work can be seeded independently of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return detail::mix64(seed ^ detail::mix64(index ^ 0xA5A5A5A55A5A5A5AULL));
}

/// Deterministic PRNG with hand-rolled distributions. The standard library
/// distributions are implementation-defined, which would break bit-identical
/// artifacts across toolchains; everything here is pinned.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(detail::mix64(seed)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) {
    // Rejection to avoid modulo bias.
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  /// Standard normal, Marsaglia polar method with one cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  /// Gamma(shape, 1) via Marsaglia-Tsang, with the shape<1 boost.
  double gamma(double shape) {
    if (shape <= 0.0) throw ConfigError("gamma shape must be positive");
    if (shape < 1.0) {
      const double g = gamma(shape + 1.0);
      double u;
      do {
        u = uniform();
      } while (u == 0.0);
      return g * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Dirichlet draw via normalized gammas. Zero concentrations map to exact
  /// zero coordinates (degenerate Gamma(0) mass at 0).
  std::vector<double> dirichlet(const std::vector<double>& alpha) {
    std::vector<double> x(alpha.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] < 0.0) throw ConfigError("dirichlet concentration must be >= 0");
      if (alpha[i] > 0.0) {
        x[i] = gamma(alpha[i]);
        total += x[i];
      }
    }
    if (total <= 0.0) throw ConfigError("dirichlet needs at least one positive concentration");
    for (double& v : x) v /= total;
    return x;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace skillgauge
