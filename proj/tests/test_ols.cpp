#include <doctest.h>

#include <cmath>

#include "ets/errors.hpp"
#include "ets/ols.hpp"
#include "ets/rng.hpp"
#include "support/ols_oracle.hpp"

using namespace ets;
using ets::stats::OlsFit;
using ets::stats::ols;

TEST_CASE("exact line is recovered with zero residuals") {
    Eigen::MatrixXd x(5, 2);
    Eigen::VectorXd y(5);
    for (int i = 0; i < 5; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = i;
        y(i) = 2.0 + 3.0 * i;
    }
    const OlsFit fit = ols(x, y);
    CHECK(fit.coefficients[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.coefficients[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.residuals.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(fit.degenerate_inference);
    CHECK(fit.p_values[0] == 0.0);
    CHECK(fit.p_values[1] == 0.0);
}

TEST_CASE("intercept-only fit of a constant gives r_squared zero") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Ones(8, 1);
    Eigen::VectorXd y = Eigen::VectorXd::Constant(8, 4.25);
    const OlsFit fit = ols(x, y);
    CHECK(fit.coefficients[0] == doctest::Approx(4.25).epsilon(1e-14));
    CHECK(fit.r_squared == 0.0);
    CHECK(fit.degenerate_inference);
}

TEST_CASE("matches the normal-equations oracle on seeded data") {
    Rng rng(123456);
    const int n = 50;
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    oracle::Matrix xo(n, std::vector<double>(3));
    std::vector<double> yo(n);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = rng.normal();
        x(i, 2) = rng.normal() * 2.0 + 1.0;
        y(i) = 0.5 - 1.2 * x(i, 1) + 0.3 * x(i, 2) + rng.normal();
        for (int j = 0; j < 3; ++j) xo[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = x(i, j);
        yo[static_cast<std::size_t>(i)] = y(i);
    }
    const OlsFit fit = ols(x, y);
    const oracle::Fit ref = oracle::ols_normal_equations(xo, yo);
    for (int j = 0; j < 3; ++j) {
        const auto js = static_cast<std::size_t>(j);
        CHECK(std::fabs(fit.coefficients[j] - ref.coefficients[js]) <
              1e-10 * std::max(1.0, std::fabs(ref.coefficients[js])));
        CHECK(std::fabs(fit.standard_errors[j] - ref.standard_errors[js]) <
              1e-10 * std::max(1.0, ref.standard_errors[js]));
        // Both sides are relative-accurate, so the comparison can be
        // relative even for p-values deep in the tail.
        CHECK(std::fabs(fit.p_values[j] - ref.p_values[js]) <=
              1e-10 * ref.p_values[js] + 1e-305);
    }
}

TEST_CASE("orthogonality of residuals to the design") {
    Rng rng(7);
    const int n = 120;
    Eigen::MatrixXd x(n, 4);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        for (int j = 1; j < 4; ++j) x(i, j) = rng.normal();
        y(i) = 1.0 + x(i, 1) - 2.0 * x(i, 3) + 0.5 * rng.normal();
    }
    const OlsFit fit = ols(x, y);
    const Eigen::VectorXd xr = x.transpose() * fit.residuals;
    CHECK(xr.cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, y.norm()));
}

TEST_CASE("scaling the response scales coefficients but not inference") {
    Rng rng(99);
    const int n = 60;
    Eigen::MatrixXd x(n, 2);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = rng.normal();
        y(i) = 2.0 + 0.7 * x(i, 1) + rng.normal();
    }
    const OlsFit base = ols(x, y);
    const OlsFit scaled = ols(x, (y * 37.0).eval());
    for (int j = 0; j < 2; ++j) {
        CHECK(scaled.coefficients[j] == doctest::Approx(37.0 * base.coefficients[j]).epsilon(1e-10));
        CHECK(scaled.t_stats[j] == doctest::Approx(base.t_stats[j]).epsilon(1e-10));
        CHECK(scaled.p_values[j] == doctest::Approx(base.p_values[j]).epsilon(1e-10));
    }
    CHECK(scaled.r_squared == doctest::Approx(base.r_squared).epsilon(1e-10));
}

TEST_CASE("errors: rank deficiency and short samples") {
    Eigen::MatrixXd x(6, 2);
    Eigen::VectorXd y(6);
    for (int i = 0; i < 6; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = 2.0;  // collinear with the intercept
        y(i) = i;
    }
    CHECK_THROWS_AS(ols(x, y), NumericError);

    Eigen::MatrixXd x2 = Eigen::MatrixXd::Random(3, 3);
    Eigen::VectorXd y2 = Eigen::VectorXd::Random(3);
    CHECK_THROWS_AS(ols(x2, y2), InsufficientDataError);
}
