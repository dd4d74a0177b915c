#pragma once

#include <stdexcept>
#include <string>

namespace skillgauge {

/// Invalid parameters, presets or spec files. CLI exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or missing input data (CSV schemas, files). CLI exit code 3.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (non-PD matrix, rank deficiency). CLI exit code 4.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace skillgauge
