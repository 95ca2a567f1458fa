#pragma once

#include <span>
#include <vector>

namespace ets::stats {

/// Sample autocorrelation function with the biased (1/n) normalization:
/// rho(k) = sum_t (x_t - xbar)(x_{t+k} - xbar) / sum_t (x_t - xbar)^2.
/// Returns max_lag + 1 values with rho(0) = 1 in front. Requires
/// series.length > max_lag >= 1; throws DataError on a constant series.
std::vector<double> acf(std::span<const double> series, int max_lag);

/// Partial autocorrelations via the Durbin-Levinson recursion on the
/// biased ACF. Same shape as acf (index 0 is 1 by convention). Throws
/// NumericError if the recursion leaves [-1, 1] by more than roundoff.
std::vector<double> pacf(std::span<const double> series, int max_lag);

double mean(std::span<const double> xs);
double sample_variance(std::span<const double> xs);  // 1/(n-1) normalization

}  // namespace ets::stats
