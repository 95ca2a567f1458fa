#pragma once

namespace ets::stats {

/// Upper-tail probability of the standard normal, P(Z > x).
double norm_sf(double x);

/// Upper-tail probability of the chi-squared distribution with df > 0
/// degrees of freedom, P(X > x). Returns 1 for x <= 0.
double chi2_sf(double x, double df);

/// Upper-tail probability of Student's t with df > 0 degrees of freedom,
/// P(T > x).
double t_sf(double x, double df);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
double regularized_beta(double a, double b, double x);

}  // namespace ets::stats
