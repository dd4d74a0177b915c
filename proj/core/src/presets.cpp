#include "skillgauge/presets.hpp"

#include <algorithm>

#include "skillgauge/errors.hpp"

namespace skillgauge {

namespace {
std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}
}  // namespace

PointSpec team_preset(const std::string& name, double rho) {
  const std::string key = lower(name);
  PointSpec spec;
  spec.rho = rho;
  if (key == "equi-mean_equivariance" || key == "equi-mean") {
    spec.means = {500, 500, 500, 500};
    spec.sds = {60, 60, 60, 60};
  } else if (key == "unequal-mean_equivariance" || key == "unequal-mean") {
    spec.means = {440, 473, 517, 550};
    spec.sds = {60, 60, 60, 60};
  } else if (key == "unequal-mean_unequal-std" || key == "unequal-mean-std") {
    spec.means = {440, 473, 517, 550};
    spec.sds = {60, 30, 60, 30};
  } else {
    throw ConfigError("unknown team preset: " + name);
  }
  return spec;
}

ImpactModel impact_preset(const std::string& name) {
  const std::string key = lower(name);
  PointSpec spec;
  spec.rho = 0.3;
  if (key == "iid") {
    spec.means = {45, 45, 45, 45};
    spec.sds = {10, 10, 10, 10};
  } else if (key == "different_mean" || key == "different-mean") {
    spec.means = {35, 40, 45, 50};
    spec.sds = {10, 10, 10, 10};
  } else if (key == "different_mean_and_std" || key == "different-mean-and-std") {
    spec.means = {35, 40, 45, 50};
    spec.sds = {5, 10, 15, 20};
  } else {
    throw ConfigError("unknown impact preset: " + name);
  }
  return ImpactModel::make(std::move(spec));
}

std::vector<std::string> team_preset_names() {
  return {"Equi-mean_Equivariance", "Unequal-mean_Equivariance", "Unequal-mean_Unequal-std"};
}

std::vector<std::string> impact_preset_names() {
  return {"IID", "Different_mean", "Different_mean_and_std"};
}

PointSpec truncate_spec(const PointSpec& spec, std::size_t k) {
  if (k < 2 || k > spec.size()) throw ConfigError("expert count out of range for preset");
  PointSpec out;
  out.rho = spec.rho;
  out.means.assign(spec.means.begin(), spec.means.begin() + k);
  out.sds.assign(spec.sds.begin(), spec.sds.begin() + k);
  return out;
}

}  // namespace skillgauge
