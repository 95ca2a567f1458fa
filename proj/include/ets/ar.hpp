#pragma once

#include <span>
#include <vector>

namespace ets::forecast {

/// Autoregressive mean model r_t = c + phi_1 r_{t-1} + ... + phi_p r_{t-p}.
struct ArModel {
    int order = 3;
    double intercept = 0.0;
    std::vector<double> coefficients;  // phi_1 .. phi_order
    /// True when the series was constant and the fit collapsed to the
    /// mean model with zero lag coefficients.
    bool degenerate = false;
};

/// Fits by OLS of r_t on an intercept and the first `order` lags.
/// Requires length >= order + 10. A constant series yields the
/// degenerate mean model instead of a rank error.
ArModel fit_ar(std::span<const double> series, int order);

/// One-step-ahead conditional mean given the most recent observations
/// (`recent.back()` is the newest; needs at least `order` values).
double ar_predict(const ArModel& model, std::span<const double> recent);

/// In-sample residuals; length = series length - order.
std::vector<double> ar_residuals(const ArModel& model, std::span<const double> series);

}  // namespace ets::forecast
