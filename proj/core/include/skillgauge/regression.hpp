#pragma once

#include <optional>
#include <string>
#include <vector>

namespace skillgauge {

/// Numeric rows keyed by column label; the regression input format.
struct NumericTable {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;  // throws ConfigError
};

/// Regression design: response plus regressor columns (an intercept is
/// always added by the fitter).
struct Design {
  std::string response;
  std::vector<std::string> labels;
  std::vector<double> y;
  std::vector<std::vector<double>> x;  // one row per observation

  std::size_t n() const { return y.size(); }
  std::size_t p() const { return labels.size(); }
};

struct RegressionFit {
  std::vector<std::string> labels;  // "(Intercept)" first
  std::vector<double> coef;
  std::vector<double> se;
  std::vector<double> t;
  std::vector<double> p_value;  // two-sided, t distribution with n-p-1 df
  double r2 = 0.0;
  double f_stat = 0.0;
  double f_p = 1.0;
  std::size_t n_obs = 0;
  std::size_t df_resid = 0;

  std::string report() const;
};

/// OLS with classical standard errors. Rank deficiency is reported with the
/// offending column's label.
RegressionFit ols_fit(const Design& design);

/// Appends a squared copy of column `var`, labeled var + "2".
Design quadratic_design(const Design& design, const std::string& var);

/// Variance ratio of per-cell mean winnings: var(config)/var(iid), n-1
/// denominators. Absent when the reference variance is zero.
std::optional<double> f_statistic(const std::vector<double>& config_cells,
                                  const std::vector<double>& iid_cells);

/// Table of per-cell means grouped by two keys. Empty cells stay absent.
struct CrossTab {
  std::vector<double> row_keys;
  std::vector<double> col_keys;
  std::vector<std::optional<double>> cells;  // row-major

  std::optional<double> at(std::size_t r, std::size_t c) const {
    return cells[r * col_keys.size() + c];
  }
};

CrossTab cross_tab(const NumericTable& table, const std::string& row_key,
                   const std::string& col_key, const std::string& value);

/// Builds a design from "response ~ a + b + b2" style formulas. A term
/// ending in "2" whose base column exists (and the literal does not) is
/// expanded as the squared base column.
Design parse_formula(const NumericTable& table, const std::string& formula);

}  // namespace skillgauge
