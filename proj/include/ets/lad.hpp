#pragma once

#include <span>

namespace ets::elasticity {

/// A fitted line y = intercept + slope * x with its least-absolute-
/// deviation objective sum_i |y_i - intercept - slope * x_i|.
struct LadLine {
    double intercept = 0.0;
    double slope = 0.0;
    double objective = 0.0;
};

double lad_objective(std::span<const double> x, std::span<const double> y, double intercept,
                     double slope);

/// Exact LAD line by enumerating candidate lines through every pair of
/// distinct-abscissa points (an LAD optimum always passes through at
/// least two data points). O(n^3); intended for n <= 500. Ties broken by
/// first pair in (i, j) order. Throws DataError when all abscissae are
/// equal.
LadLine lad_fit_exact(std::span<const double> x, std::span<const double> y);

/// Iteratively reweighted least squares on the smoothed objective
/// sum sqrt(r^2 + delta), delta = 1e-8, followed by a local
/// pair-enumeration polish over the lowest-residual points. Agrees with
/// the exact path on moderate n and scales to large samples.
LadLine lad_fit_irls(std::span<const double> x, std::span<const double> y);

/// Size-dispatched solver: exact enumeration for n <= 500, IRLS + polish
/// above.
LadLine lad_fit(std::span<const double> x, std::span<const double> y);

}  // namespace ets::elasticity
