#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "ets/ar.hpp"
#include "ets/errors.hpp"
#include "ets/format.hpp"
#include "ets/ols.hpp"
#include "ets/rng.hpp"
#include "ets/rolling.hpp"
#include "support/series_util.hpp"
#include "support/sim.hpp"

using namespace ets;
using namespace ets::forecast;

TEST_CASE("ar fit on a constant series degenerates to the mean model") {
    std::vector<double> zeros(40, 0.0);
    const ArModel m = fit_ar(zeros, 3);
    CHECK(m.degenerate);
    CHECK(m.intercept == 0.0);
    for (double c : m.coefficients) CHECK(c == 0.0);
    CHECK(ar_predict(m, zeros) == 0.0);
}

TEST_CASE("ar(3) simulation is recovered within 0.05") {
    Rng rng(161803);
    const auto x = sim::ar(rng, 2000, 0.0, {0.3, -0.2, 0.1});
    const ArModel m = fit_ar(x, 3);
    CHECK(std::fabs(m.coefficients[0] - 0.3) <= 0.05);
    CHECK(std::fabs(m.coefficients[1] + 0.2) <= 0.05);
    CHECK(std::fabs(m.coefficients[2] - 0.1) <= 0.05);
}

TEST_CASE("overfitting ar(1) with order 3 leaves the extra lags near zero") {
    Rng rng(112358);
    const auto x = sim::ar(rng, 1500, 0.0, {0.5});
    const ArModel m = fit_ar(x, 3);

    // Standard errors from the same regression, refit explicitly.
    const auto n = static_cast<Eigen::Index>(x.size()) - 3;
    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::size_t t = static_cast<std::size_t>(i) + 3;
        y[i] = x[t];
        design(i, 0) = 1.0;
        design(i, 1) = x[t - 1];
        design(i, 2) = x[t - 2];
        design(i, 3) = x[t - 3];
    }
    const stats::OlsFit fit = stats::ols(design, y);
    CHECK(m.coefficients[0] == doctest::Approx(fit.coefficients[1]).epsilon(1e-12));
    CHECK(std::fabs(m.coefficients[1]) <= 2.0 * fit.standard_errors[2]);
    CHECK(std::fabs(m.coefficients[2]) <= 2.0 * fit.standard_errors[3]);
}

TEST_CASE("ar fit rejects short series") {
    std::vector<double> x(11, 1.0);
    CHECK_THROWS_AS(fit_ar(x, 3), InsufficientDataError);
}

TEST_CASE("rolling forecast boundary: one step when length = window + 1") {
    Rng rng(9);
    std::vector<double> r(51);
    for (auto& v : r) v = 0.05 * rng.normal();
    const auto series = testutil::make_return_series(r);
    const auto result = rolling_forecast(series, 50, 3);
    CHECK(result.steps.size() == 1);
    CHECK(result.steps[0].actual == r.back());
    CHECK(result.steps[0].forecast_variance > 0.0);
}

TEST_CASE("rolling forecast shape law: 160 observations, window 104, 56 steps") {
    Rng rng(20100105);
    const auto eps = sim::garch11(rng, 160, 0.00002, 0.08, 0.88);
    std::vector<double> r(eps);
    const auto series = testutil::make_return_series(r);
    const auto result = rolling_forecast(series, 104, 3);
    CHECK(result.steps.size() == 56);
    for (const auto& s : result.steps) CHECK(s.forecast_variance > 0.0);
}

TEST_CASE("homoskedastic series: variance forecasts track the true variance") {
    Rng rng(44);
    const double true_var = 0.01;
    std::vector<double> r(160);
    for (auto& v : r) v = std::sqrt(true_var) * rng.normal();
    const auto series = testutil::make_return_series(r);
    const auto result = rolling_forecast(series, 104, 3);
    int close = 0;
    for (const auto& s : result.steps) {
        if (std::fabs(s.forecast_variance - true_var) <= 0.3 * true_var) ++close;
    }
    CHECK(static_cast<double>(close) / static_cast<double>(result.steps.size()) >= 0.9);
}

TEST_CASE("evaluate equals the brute-force tally on a 5-step fixture") {
    RollingForecastResult rf;
    rf.window = 104;
    const double rows[][3] = {
        // mean, variance, actual
        {0.1, 0.04, 0.25}, {-0.2, 0.01, -0.25}, {0.0, 0.01, 0.0},
        {0.3, 0.0025, -0.1}, {-0.1, 0.09, 0.15},
    };
    Date monday{2010, 1, 4};
    for (const auto& row : rows) {
        rf.steps.push_back({iso_week_of(monday), row[0], row[1], row[2], false});
        monday = monday.plus_days(7);
    }
    const ForecastMetrics m = evaluate(rf);
    // Hand tally: errors 0.15, -0.05, 0, -0.4, 0.25.
    CHECK(m.mse == doctest::Approx((0.0225 + 0.0025 + 0.0 + 0.16 + 0.0625) / 5.0).epsilon(1e-14));
    CHECK(m.mae == doctest::Approx((0.15 + 0.05 + 0.0 + 0.4 + 0.25) / 5.0).epsilon(1e-14));
    CHECK(m.rmse == doctest::Approx(std::sqrt(m.mse)).epsilon(1e-14));
    CHECK(m.directional_accuracy == doctest::Approx(3.0 / 5.0));
    CHECK(m.hit_rate == doctest::Approx(4.0 / 5.0));
}

TEST_CASE("perfect forecasts score perfectly") {
    RollingForecastResult rf;
    Date monday{2010, 1, 4};
    for (int i = 0; i < 7; ++i) {
        const double v = 0.01 * (i - 3);
        rf.steps.push_back({iso_week_of(monday), v, 0.001, v, false});
        monday = monday.plus_days(7);
    }
    const ForecastMetrics m = evaluate(rf);
    CHECK(m.mse == 0.0);
    CHECK(m.directional_accuracy == 1.0);
    CHECK(m.hit_rate == 1.0);
}

TEST_CASE("widening every band never lowers the hit rate") {
    Rng rng(4711);
    RollingForecastResult rf;
    Date monday{2010, 1, 4};
    for (int i = 0; i < 64; ++i) {
        rf.steps.push_back({iso_week_of(monday), 0.01 * rng.normal(), 0.002 + 0.001 * rng.uniform01(),
                            0.05 * rng.normal(), false});
        monday = monday.plus_days(7);
    }
    const double base = evaluate(rf).hit_rate;
    for (double c : {1.5, 3.0, 10.0}) {
        RollingForecastResult wide = rf;
        for (auto& s : wide.steps) s.forecast_variance *= c;
        CHECK(evaluate(wide).hit_rate >= base);
    }
}

TEST_CASE("rmse squared equals mse on random runs") {
    Rng rng(31337);
    RollingForecastResult rf;
    Date monday{2010, 1, 4};
    for (int i = 0; i < 40; ++i) {
        rf.steps.push_back({iso_week_of(monday), rng.normal(), 0.5 + rng.uniform01(),
                            rng.normal(), false});
        monday = monday.plus_days(7);
    }
    const ForecastMetrics m = evaluate(rf);
    CHECK(std::fabs(m.rmse * m.rmse - m.mse) <= 1e-12 * std::max(1.0, m.mse));
}

namespace {

std::string serialize_steps(const RollingForecastResult& r) {
    std::ostringstream out;
    for (const auto& s : r.steps) {
        out << s.week.str() << ',' << format_double(s.forecast_mean) << ','
            << format_double(s.forecast_variance) << ',' << format_double(s.actual) << ','
            << (s.garch_fallback ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("rolling forecast golden run is bit-stable") {
    Rng rng(20200430);
    const auto eps = sim::garch11(rng, 160, 0.00002, 0.08, 0.88);
    const auto series = testutil::make_return_series(eps);
    const auto result = rolling_forecast(series, 104, 3);
    REQUIRE(result.steps.size() == 56);
    const std::string serialized = serialize_steps(result);

    // Determinism within a process: a second run is byte-identical.
    const auto again = rolling_forecast(series, 104, 3);
    CHECK(serialize_steps(again) == serialized);

    const std::filesystem::path golden =
        std::filesystem::path(ETS_SOURCE_DIR) / "tests" / "golden" / "rolling_steps.csv";
    if (!std::filesystem::exists(golden)) {
        std::ofstream(golden) << serialized;  // first run records the golden
    }
    std::ifstream in(golden);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == serialized);
}

TEST_CASE("rolling forecast rejects short input") {
    std::vector<double> r(80, 0.01);
    const auto series = testutil::make_return_series(r);
    CHECK_THROWS_AS(rolling_forecast(series, 104, 3), InsufficientDataError);
    CHECK_THROWS_AS(rolling_forecast(series, 20, 3), UsageError);
}
