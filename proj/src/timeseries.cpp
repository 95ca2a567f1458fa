#include "ets/timeseries.hpp"

#include <cmath>
#include <cstddef>

#include "ets/errors.hpp"

namespace ets::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw UsageError("mean of empty range");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
    if (xs.size() < 2) throw UsageError("sample_variance needs at least 2 values");
    const double m = mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

std::vector<double> acf(std::span<const double> series, int max_lag) {
    const std::size_t n = series.size();
    if (max_lag < 1) throw UsageError("acf: max_lag must be >= 1");
    if (n <= static_cast<std::size_t>(max_lag)) {
        throw InsufficientDataError("acf: series length must exceed max_lag");
    }
    const double m = mean(series);
    double denom = 0.0;
    for (double x : series) denom += (x - m) * (x - m);
    if (denom == 0.0) throw DataError("acf: constant series has undefined autocorrelation");

    std::vector<double> rho(static_cast<std::size_t>(max_lag) + 1);
    rho[0] = 1.0;
    for (int k = 1; k <= max_lag; ++k) {
        double num = 0.0;
        for (std::size_t t = 0; t + static_cast<std::size_t>(k) < n; ++t) {
            num += (series[t] - m) * (series[t + static_cast<std::size_t>(k)] - m);
        }
        rho[static_cast<std::size_t>(k)] = num / denom;
    }
    return rho;
}

std::vector<double> pacf(std::span<const double> series, int max_lag) {
    const std::vector<double> rho = acf(series, max_lag);
    const std::size_t k_max = static_cast<std::size_t>(max_lag);

    std::vector<double> out(k_max + 1);
    out[0] = 1.0;

    std::vector<double> phi_prev(k_max + 1, 0.0);
    std::vector<double> phi_cur(k_max + 1, 0.0);
    double v = 1.0;  // prediction error variance ratio

    for (std::size_t k = 1; k <= k_max; ++k) {
        double num = rho[k];
        for (std::size_t j = 1; j < k; ++j) num -= phi_prev[j] * rho[k - j];
        if (v <= 0.0) {
            throw NumericError("pacf: Durbin-Levinson recursion degenerated at lag " +
                               std::to_string(k));
        }
        double phi_kk = num / v;
        if (std::fabs(phi_kk) > 1.0 + 1e-8) {
            throw NumericError("pacf: recursion diverged (|phi| > 1) at lag " + std::to_string(k));
        }
        phi_kk = std::clamp(phi_kk, -1.0, 1.0);
        phi_cur[k] = phi_kk;
        for (std::size_t j = 1; j < k; ++j) phi_cur[j] = phi_prev[j] - phi_kk * phi_prev[k - j];
        v *= (1.0 - phi_kk * phi_kk);
        out[k] = phi_kk;
        phi_prev = phi_cur;
    }
    return out;
}

}  // namespace ets::stats
