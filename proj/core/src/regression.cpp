#include "skillgauge/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "skillgauge/errors.hpp"
#include "skillgauge/mathx.hpp"

namespace skillgauge {

std::size_t NumericTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == name) return i;
  throw ConfigError("unknown column: " + name);
}

RegressionFit ols_fit(const Design& design) {
  const std::size_t n = design.n();
  const std::size_t p = design.p();
  if (n < p + 2) throw ConfigError("need at least p+2 observations");
  for (const auto& row : design.x)
    if (row.size() != p) throw ConfigError("ragged design row");

  Eigen::MatrixXd X(n, p + 1);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    for (std::size_t j = 0; j < p; ++j) X(i, j + 1) = design.x[i][j];
    y[i] = design.y[i];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(p + 1)) {
    // The last pivot columns are the linearly dependent ones.
    const auto perm = qr.colsPermutation().indices();
    const Eigen::Index bad = perm[qr.rank()];
    const std::string label = bad == 0 ? "(Intercept)" : design.labels[bad - 1];
    throw NumericalError("design matrix is rank deficient at column: " + label);
  }

  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - X * beta;
  const double ss_res = resid.squaredNorm();
  const double y_mean = y.mean();
  const double ss_tot = (y.array() - y_mean).square().sum();
  const std::size_t df = n - p - 1;
  const double sigma2 = ss_res / static_cast<double>(df);
  const Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();

  RegressionFit fit;
  fit.labels.push_back("(Intercept)");
  for (const auto& l : design.labels) fit.labels.push_back(l);
  fit.n_obs = n;
  fit.df_resid = df;
  fit.coef.resize(p + 1);
  fit.se.resize(p + 1);
  fit.t.resize(p + 1);
  fit.p_value.resize(p + 1);
  for (std::size_t j = 0; j <= p; ++j) {
    fit.coef[j] = beta[j];
    fit.se[j] = std::sqrt(sigma2 * xtx_inv(j, j));
    fit.t[j] = fit.se[j] > 0.0 ? fit.coef[j] / fit.se[j]
                               : (fit.coef[j] == 0.0 ? 0.0 : std::copysign(1e308, fit.coef[j]));
    fit.p_value[j] =
        fit.se[j] > 0.0 ? student_t_two_sided_p(fit.t[j], static_cast<double>(df))
                        : (fit.coef[j] == 0.0 ? 1.0 : 0.0);
  }
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
  if (fit.r2 < 0.0) fit.r2 = 0.0;
  if (p > 0 && fit.r2 < 1.0) {
    fit.f_stat = (fit.r2 / static_cast<double>(p)) /
                 ((1.0 - fit.r2) / static_cast<double>(df));
    fit.f_p = f_upper_tail(fit.f_stat, static_cast<double>(p), static_cast<double>(df));
  } else if (fit.r2 >= 1.0) {
    fit.f_stat = std::numeric_limits<double>::infinity();
    fit.f_p = 0.0;
  }
  return fit;
}

std::string RegressionFit::report() const {
  std::ostringstream out;
  out << "variable,coefficient,std_error,t,p_value\n";
  char buf[160];
  for (std::size_t j = 0; j < labels.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%s,%.6g,%.6g,%.6g,%.6g\n", labels[j].c_str(), coef[j],
                  se[j], t[j], p_value[j]);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "R2,%.6g,,,\nF,%.6g,,,%.6g\nn,%zu,,,\n", r2, f_stat, f_p,
                n_obs);
  out << buf;
  return out.str();
}

Design quadratic_design(const Design& design, const std::string& var) {
  const auto it = std::find(design.labels.begin(), design.labels.end(), var);
  if (it == design.labels.end()) throw ConfigError("no such regressor: " + var);
  const std::size_t idx = static_cast<std::size_t>(it - design.labels.begin());
  Design out = design;
  out.labels.push_back(var + "2");
  for (auto& row : out.x) row.push_back(row[idx] * row[idx]);
  return out;
}

std::optional<double> f_statistic(const std::vector<double>& config_cells,
                                  const std::vector<double>& iid_cells) {
  if (config_cells.empty() || iid_cells.empty()) throw ConfigError("empty cell set");
  const double denom = sample_variance(iid_cells);
  if (denom == 0.0) return std::nullopt;
  return sample_variance(config_cells) / denom;
}

CrossTab cross_tab(const NumericTable& table, const std::string& row_key,
                   const std::string& col_key, const std::string& value) {
  const std::size_t ri = table.column(row_key);
  const std::size_t ci = table.column(col_key);
  const std::size_t vi = table.column(value);

  std::map<double, std::size_t> row_index, col_index;
  for (const auto& row : table.rows) {
    row_index.emplace(row[ri], 0);
    col_index.emplace(row[ci], 0);
  }
  CrossTab tab;
  for (auto& [k, idx] : row_index) {
    idx = tab.row_keys.size();
    tab.row_keys.push_back(k);
  }
  for (auto& [k, idx] : col_index) {
    idx = tab.col_keys.size();
    tab.col_keys.push_back(k);
  }
  std::vector<double> sums(tab.row_keys.size() * tab.col_keys.size(), 0.0);
  std::vector<std::size_t> counts(sums.size(), 0);
  for (const auto& row : table.rows) {
    const std::size_t cell = row_index[row[ri]] * tab.col_keys.size() + col_index[row[ci]];
    sums[cell] += row[vi];
    ++counts[cell];
  }
  tab.cells.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i)
    if (counts[i] > 0) tab.cells[i] = sums[i] / static_cast<double>(counts[i]);
  return tab;
}

Design parse_formula(const NumericTable& table, const std::string& formula) {
  const auto tilde = formula.find('~');
  if (tilde == std::string::npos) throw ConfigError("formula must contain '~'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  Design design;
  design.response = trim(formula.substr(0, tilde));
  if (design.response.empty()) throw ConfigError("formula has no response");
  const std::size_t yi = table.column(design.response);

  struct Term {
    std::size_t col;
    bool squared;
    std::string label;
  };
  std::vector<Term> terms;
  std::string rhs = formula.substr(tilde + 1);
  std::stringstream ss(rhs);
  std::string piece;
  while (std::getline(ss, piece, '+')) {
    std::string name = trim(piece);
    if (name.empty()) throw ConfigError("empty term in formula");
    bool squared = false;
    std::string base = name;
    if (name.size() > 1 && name.substr(name.size() - 2) == "^2") {
      squared = true;
      base = trim(name.substr(0, name.size() - 2));
    }
    // "C2" shorthand: squared C when a literal C2 column does not exist.
    if (!squared && name.back() == '2') {
      bool literal = false;
      for (const auto& l : table.labels)
        if (l == name) literal = true;
      if (!literal) {
        squared = true;
        base = name.substr(0, name.size() - 1);
      }
    }
    terms.push_back({table.column(base), squared, name});
  }
  if (terms.empty()) throw ConfigError("formula has no regressors");

  for (const auto& t : terms) design.labels.push_back(t.label);
  design.y.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    design.y.push_back(row[yi]);
    std::vector<double> xrow;
    xrow.reserve(terms.size());
    for (const auto& t : terms) {
      const double v = row[t.col];
      xrow.push_back(t.squared ? v * v : v);
    }
    design.x.push_back(std::move(xrow));
  }
  return design;
}

}  // namespace skillgauge
