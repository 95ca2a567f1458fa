#include "ets/rolling.hpp"

#include <cmath>

#include "ets/ar.hpp"
#include "ets/errors.hpp"
#include "ets/timeseries.hpp"

namespace ets::forecast {

RollingForecastResult rolling_forecast(const ReturnSeries& series, int window, int ar_order,
                                       const GarchFitOptions& garch) {
    const std::vector<double> r = series.values();
    const std::size_t n = r.size();
    if (window < 50) throw UsageError("rolling_forecast: window must be >= 50");
    if (window < ar_order + 10) throw UsageError("rolling_forecast: window too small for order");
    if (n <= static_cast<std::size_t>(window)) {
        throw InsufficientDataError("rolling_forecast: series length " + std::to_string(n) +
                                    " does not exceed window " + std::to_string(window));
    }

    RollingForecastResult result;
    result.window = window;
    result.ar_order = ar_order;
    result.steps.reserve(n - static_cast<std::size_t>(window));

    const std::span<const double> all(r);
    for (std::size_t t = static_cast<std::size_t>(window); t < n; ++t) {
        const auto win = all.subspan(t - static_cast<std::size_t>(window),
                                     static_cast<std::size_t>(window));
        const ArModel ar = fit_ar(win, ar_order);
        const std::vector<double> resid = ar_residuals(ar, win);

        ForecastStep step;
        step.week = series.points[t].week;
        step.actual = r[t];
        step.forecast_mean = ar_predict(ar, win);

        try {
            const GarchModel g = fit_garch(resid, garch);
            const std::vector<double> sig2 = garch_filter(g, resid);
            step.forecast_variance = garch_one_step_variance(g, resid.back(), sig2.back());
        } catch (const Error&) {
            // Keep the backtest total: fall back to the window residual
            // variance and mark the step.
            step.forecast_variance = stats::sample_variance(resid);
            step.garch_fallback = true;
        }
        if (!(step.forecast_variance > 0.0)) {
            throw NumericError("rolling_forecast: nonpositive variance forecast at week " +
                               step.week.str());
        }
        result.steps.push_back(step);
    }
    return result;
}

ForecastMetrics evaluate(const RollingForecastResult& result) {
    if (result.steps.empty()) throw UsageError("evaluate: empty forecast result");
    auto sign = [](double x) { return (x > 0.0) - (x < 0.0); };

    ForecastMetrics m;
    m.steps = static_cast<int>(result.steps.size());
    double se = 0.0, ae = 0.0;
    int direction_hits = 0, band_hits = 0;
    for (const auto& s : result.steps) {
        const double err = s.actual - s.forecast_mean;
        se += err * err;
        ae += std::fabs(err);
        if (sign(s.forecast_mean) == sign(s.actual)) ++direction_hits;
        if (std::fabs(err) <= std::sqrt(s.forecast_variance)) ++band_hits;
    }
    const auto n = static_cast<double>(m.steps);
    m.mse = se / n;
    m.rmse = std::sqrt(m.mse);
    m.mae = ae / n;
    m.directional_accuracy = direction_hits / n;
    m.hit_rate = band_hits / n;
    return m;
}

}  // namespace ets::forecast
