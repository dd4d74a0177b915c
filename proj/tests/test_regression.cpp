#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "skillgauge/errors.hpp"
#include "skillgauge/mathx.hpp"
#include "skillgauge/regression.hpp"

using namespace skillgauge;

namespace {

// Independent OLS oracle: normal equations solved by Gaussian elimination
// with partial pivoting. Shares no code with the library fitter.
std::vector<double> normal_equations(const Design& d) {
  const std::size_t p = d.p() + 1;
  std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
  auto x_at = [&](std::size_t row, std::size_t col) {
    return col == 0 ? 1.0 : d.x[row][col - 1];
  };
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t r = 0; r < d.n(); ++r) a[i][j] += x_at(r, i) * x_at(r, j);
    for (std::size_t r = 0; r < d.n(); ++r) a[i][p] += x_at(r, i) * d.y[r];
  }
  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= p; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> beta(p);
  for (std::size_t i = 0; i < p; ++i) beta[i] = a[i][p] / a[i][i];
  return beta;
}

}  // namespace

TEST_CASE("special function oracles") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959964) == doctest::Approx(0.975).epsilon(1e-5));
  CHECK(incomplete_beta(2, 2, 0.5) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(incomplete_beta(2, 2, 0.0) == doctest::Approx(0.0));
  CHECK(incomplete_beta(2, 2, 1.0) == doctest::Approx(1.0));
  // I_x(1, b) = 1 - (1-x)^b in closed form.
  CHECK(incomplete_beta(1, 3, 0.2) == doctest::Approx(1 - std::pow(0.8, 3)).epsilon(1e-10));
  CHECK(student_t_cdf(0.0, 7) == doctest::Approx(0.5));
  // Reference: P(|T_10| > 2.228139) = 0.05.
  CHECK(student_t_two_sided_p(2.228139, 10) == doctest::Approx(0.05).epsilon(1e-4));
  // t with df=1 is Cauchy: CDF(1) = 3/4.
  CHECK(student_t_cdf(1.0, 1) == doctest::Approx(0.75).epsilon(1e-8));
}

TEST_CASE("zero-noise interpolation recovers coefficients exactly") {
  Design d;
  d.response = "y";
  d.labels = {"a", "b"};
  for (int i = 0; i < 12; ++i) {
    const double a = i, b = (i * 7) % 5;
    d.x.push_back({a, b});
    d.y.push_back(3.0 + 2.0 * a - 0.5 * b);
  }
  const RegressionFit fit = ols_fit(d);
  CHECK(fit.coef[0] == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.coef[1] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.coef[2] == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coefficients match the normal-equations oracle on random designs") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    Design d;
    d.response = "y";
    const std::size_t p = 1 + trial % 4;
    for (std::size_t j = 0; j < p; ++j) d.labels.push_back("x" + std::to_string(j));
    const std::size_t n = 30 + trial;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> row;
      double y = 1.5;
      for (std::size_t j = 0; j < p; ++j) {
        row.push_back(unif(gen));
        y += (j + 1) * 0.7 * row.back();
      }
      d.x.push_back(row);
      d.y.push_back(y + noise(gen));
    }
    const RegressionFit fit = ols_fit(d);
    const std::vector<double> oracle = normal_equations(d);
    REQUIRE(fit.coef.size() == oracle.size());
    for (std::size_t j = 0; j < oracle.size(); ++j)
      CHECK(fit.coef[j] == doctest::Approx(oracle[j]).epsilon(1e-8));
  }
}

TEST_CASE("standard errors match the closed form on a tiny fixture") {
  // Simple regression y on x: SE(b1) = s / sqrt(Sxx).
  Design d;
  d.response = "y";
  d.labels = {"x"};
  const std::vector<double> xs = {1, 2, 3, 4, 5, 6};
  const std::vector<double> ys = {2.1, 3.9, 6.2, 7.8, 10.1, 11.9};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d.x.push_back({xs[i]});
    d.y.push_back(ys[i]);
  }
  const RegressionFit fit = ols_fit(d);
  const std::vector<double> beta = normal_equations(d);
  double sse = 0, sxx = 0, xbar = 3.5;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - beta[0] - beta[1] * xs[i];
    sse += e * e;
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
  }
  const double s2 = sse / (6 - 2);
  CHECK(fit.se[1] == doctest::Approx(std::sqrt(s2 / sxx)).epsilon(1e-10));
  CHECK(fit.df_resid == 4);
  CHECK(fit.t[1] == doctest::Approx(fit.coef[1] / fit.se[1]));
  CHECK(fit.p_value[1] == doctest::Approx(student_t_two_sided_p(fit.t[1], 4)));
}

TEST_CASE("rank deficiency is reported with the offending column") {
  Design d;
  d.response = "y";
  d.labels = {"a", "a_copy"};
  for (int i = 0; i < 10; ++i) {
    d.x.push_back({double(i), double(i)});
    d.y.push_back(i * 2.0);
  }
  CHECK_THROWS_WITH_AS(ols_fit(d), doctest::Contains("a"), NumericalError);
}

TEST_CASE("quadratic design appends the squared column") {
  Design d;
  d.response = "y";
  d.labels = {"c"};
  d.x = {{2.0}, {3.0}};
  d.y = {1.0, 2.0};
  const Design q = quadratic_design(d, "c");
  REQUIRE(q.labels.size() == 2);
  CHECK(q.labels[1] == "c2");
  CHECK(q.x[0][1] == doctest::Approx(4.0));
  CHECK(q.x[1][1] == doctest::Approx(9.0));
}

TEST_CASE("f statistic is a plain variance ratio") {
  const std::vector<double> config = {0, 4, 8, 12};   // var 80/3
  const std::vector<double> iid = {1, 2, 3, 4};       // var 5/3
  CHECK(f_statistic(config, iid).value() == doctest::Approx(16.0));
  CHECK_FALSE(f_statistic(config, {1, 1, 1}).has_value());
}

TEST_CASE("formula parsing with squared shorthand") {
  NumericTable table;
  table.labels = {"gain", "C", "E"};
  table.rows = {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {5, 5, 6}};
  const Design d = parse_formula(table, "gain ~ C + C2 + E");
  REQUIRE(d.labels.size() == 3);
  CHECK(d.response == "gain");
  CHECK(d.labels[1] == "C2");
  CHECK(d.x[1][1] == doctest::Approx(9.0));  // squared expansion of C
  CHECK_THROWS_AS(parse_formula(table, "gain ~ missing"), ConfigError);
  CHECK_THROWS_AS(parse_formula(table, "nope"), ConfigError);
}

TEST_CASE("cross tab groups per-cell means") {
  NumericTable table;
  table.labels = {"r", "c", "v"};
  table.rows = {{1, 1, 10}, {1, 1, 20}, {1, 2, 5}, {2, 2, 7}};
  const CrossTab tab = cross_tab(table, "r", "c", "v");
  REQUIRE(tab.row_keys.size() == 2);
  REQUIRE(tab.col_keys.size() == 2);
  CHECK(tab.at(0, 0).value() == doctest::Approx(15.0));
  CHECK(tab.at(0, 1).value() == doctest::Approx(5.0));
  CHECK_FALSE(tab.at(1, 0).has_value());
  CHECK(tab.at(1, 1).value() == doctest::Approx(7.0));
}
