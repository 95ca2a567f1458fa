#pragma once

#include <vector>

#include "ets/core.hpp"
#include "ets/garch.hpp"

namespace ets::forecast {

struct ForecastStep {
    IsoWeek week;               // week of the forecast target
    double forecast_mean = 0.0;
    double forecast_variance = 0.0;  // > 0
    double actual = 0.0;
    /// Set when the GARCH fit failed at this step and the window residual
    /// variance was used instead.
    bool garch_fallback = false;
};

struct RollingForecastResult {
    std::vector<ForecastStep> steps;  // length = series length - window
    int window = 104;
    int ar_order = 3;

    [[nodiscard]] int fallback_count() const {
        int c = 0;
        for (const auto& s : steps) c += s.garch_fallback ? 1 : 0;
        return c;
    }
};

/// Walk-forward one-step-ahead backtest. At each step the AR model is
/// refit on the trailing `window` returns, its residuals are refit with
/// GARCH(1,1), and the next return's mean and variance are forecast.
/// Both models are refit at every step. Requires
/// series length > window >= 50 and window >= ar_order + 10.
RollingForecastResult rolling_forecast(const ReturnSeries& series, int window = 104,
                                       int ar_order = 3, const GarchFitOptions& garch = {});

struct ForecastMetrics {
    double mse = 0.0;
    double rmse = 0.0;
    double mae = 0.0;
    double directional_accuracy = 0.0;  // sign(forecast) == sign(actual)
    double hit_rate = 0.0;              // |actual - mean| <= sqrt(variance)
    int steps = 0;
};

/// The five evaluation metrics over a backtest run. sign(0) matches only
/// sign(0) in the directional count.
ForecastMetrics evaluate(const RollingForecastResult& result);

}  // namespace ets::forecast
