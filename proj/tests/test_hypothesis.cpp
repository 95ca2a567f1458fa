#include <doctest.h>

#include <cmath>
#include <span>
#include <vector>

#include "ets/errors.hpp"
#include "ets/hypothesis.hpp"
#include "ets/rng.hpp"
#include "support/frozen_series.hpp"

using namespace ets;
using namespace ets::stats;

TEST_CASE("adf matches the frozen external reference") {
    std::span<const double> x(frozen::kFrozenAr1);
    AdfOptions options;
    options.max_lag = 12;  // floor(12 * (120/100)^(1/4))
    const TestResult r = adf_test(x, options);
    CHECK(r.statistic == doctest::Approx(frozen::kAr1AdfStat).epsilon(1e-7));
    CHECK(r.p_value == doctest::Approx(frozen::kAr1AdfPvalue).epsilon(1e-6));
    CHECK(r.lags_used == frozen::kAr1AdfUsedLag);
    CHECK(r.conclusion == TestConclusion::RejectH0);
}

TEST_CASE("arch-lm matches the frozen external reference") {
    std::span<const double> x(frozen::kFrozenArch);
    const TestResult r = arch_lm_test(x, 5);
    CHECK(r.statistic == doctest::Approx(frozen::kArchLmStat).epsilon(1e-8));
    CHECK(r.p_value == doctest::Approx(frozen::kArchLmPvalue).epsilon(1e-8));
    CHECK(r.conclusion == TestConclusion::RejectH0);
}

TEST_CASE("mackinnon surface fixed points") {
    // Values pinned from the published response-surface coefficients.
    // Relative comparisons by hand: Approx's default absolute scale would
    // wave through garbage at the 1e-17 magnitude.
    auto close = [](double a, double b, double rel) {
        return std::fabs(a - b) <= rel * std::fabs(b);
    };
    CHECK(close(mackinnon_pvalue(-10.0, AdfSpec::Constant), 1.8953190533444514e-17, 1e-8));
    CHECK(close(mackinnon_pvalue(-3.0, AdfSpec::Constant), 0.034894400275345266, 1e-10));
    CHECK(close(mackinnon_pvalue(-1.0, AdfSpec::Constant), 0.7532643012005655, 1e-10));
    CHECK(close(mackinnon_pvalue(0.5, AdfSpec::Constant), 0.9848730963065522, 1e-10));
    CHECK(mackinnon_pvalue(3.0, AdfSpec::Constant) == 1.0);
    CHECK(mackinnon_pvalue(-25.0, AdfSpec::Constant) == 1e-20);
}

TEST_CASE("adf statistic is invariant to series scaling") {
    Rng rng(2024);
    std::vector<double> x(200);
    double prev = 0.0;
    for (auto& v : x) {
        prev = 0.5 * prev + rng.normal();
        v = prev;
    }
    const TestResult base = adf_test(x);
    std::vector<double> scaled(x);
    for (auto& v : scaled) v *= 1000.0;
    const TestResult big = adf_test(scaled);
    CHECK(big.statistic == doctest::Approx(base.statistic).epsilon(1e-9));
    CHECK(big.lags_used == base.lags_used);
}

TEST_CASE("arch-lm statistic is invariant to residual scaling") {
    std::span<const double> x(frozen::kFrozenArch);
    std::vector<double> scaled(x.begin(), x.end());
    for (auto& v : scaled) v *= 0.001;
    const TestResult base = arch_lm_test(x, 5);
    const TestResult small = arch_lm_test(scaled, 5);
    CHECK(small.statistic == doctest::Approx(base.statistic).epsilon(1e-8));
}

TEST_CASE("adf rejects stationary noise and keeps random walks") {
    int reject_noise = 0, keep_walk = 0;
    const int trials = 25;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_task(555, static_cast<std::uint64_t>(trial));
        std::vector<double> noise(300), walk(300);
        double level = 0.0;
        for (std::size_t i = 0; i < 300; ++i) {
            noise[i] = rng.normal();
            level += rng.normal();
            walk[i] = level;
        }
        if (adf_test(noise).p_value < 0.01) ++reject_noise;
        if (adf_test(walk).p_value > 0.10) ++keep_walk;
    }
    CHECK(reject_noise >= trials * 9 / 10);
    CHECK(keep_walk >= trials * 7 / 10);
}

TEST_CASE("arch-lm degenerate and error paths") {
    std::vector<double> constant(60, 2.0);  // squared residuals constant
    const TestResult r = arch_lm_test(constant, 5);
    CHECK(r.statistic == 0.0);
    CHECK(r.p_value == 1.0);
    CHECK(r.conclusion == TestConclusion::FailToReject);

    std::vector<double> shorty(8, 1.0);
    CHECK_THROWS_AS(arch_lm_test(shorty, 5), InsufficientDataError);
}

TEST_CASE("adf error paths") {
    std::vector<double> shorty(10, 1.0);
    CHECK_THROWS_AS(adf_test(shorty), InsufficientDataError);
    std::vector<double> constant(50, 1.0);
    CHECK_THROWS_AS(adf_test(constant), DataError);
}

TEST_CASE("fixed-lag override is honored") {
    std::span<const double> x(frozen::kFrozenAr1);
    AdfOptions options;
    options.fixed_lag = 4;
    const TestResult r = adf_test(x, options);
    CHECK(r.lags_used == 4);
}
