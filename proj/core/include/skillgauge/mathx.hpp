#pragma once

#include <cstddef>
#include <vector>

namespace skillgauge {

/// Standard normal CDF.
double normal_cdf(double z);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
/// (Lentz), accurate to ~1e-12.
double incomplete_beta(double a, double b, double x);

/// Student-t CDF with df degrees of freedom.
double student_t_cdf(double t, double df);

/// Two-sided p-value for a t statistic.
double student_t_two_sided_p(double t, double df);

/// F distribution upper-tail probability P(F_{d1,d2} > f).
double f_upper_tail(double f, double d1, double d2);

double mean(const std::vector<double>& v);

/// Sample variance, n-1 denominator. Defined as 0 for a single observation.
double sample_variance(const std::vector<double>& v);

double sample_sd(const std::vector<double>& v);

}  // namespace skillgauge
