#pragma once

#include <array>
#include <span>
#include <vector>

#include "ets/neldermead.hpp"

namespace ets::forecast {

/// GARCH(1,1) conditional-variance model
///   sigma2_t = omega + alpha * e_{t-1}^2 + beta * sigma2_{t-1},
/// with sigma2_1 = init_variance. Covariance stationarity requires
/// alpha + beta < 1.
struct GarchModel {
    double omega = 0.0;          // > 0
    double alpha = 0.0;          // >= 0
    double beta = 0.0;           // >= 0
    double init_variance = 0.0;  // > 0

    [[nodiscard]] bool valid() const {
        return omega > 0.0 && alpha >= 0.0 && beta >= 0.0 && alpha + beta < 1.0 &&
               init_variance > 0.0;
    }
};

/// Conditional variance path sigma2_1..sigma2_n for the residual series.
std::vector<double> garch_filter(const GarchModel& model, std::span<const double> residuals);

/// Gaussian negative log-likelihood
///   0.5 * sum_t [ ln(2 pi sigma2_t) + e_t^2 / sigma2_t ].
/// Throws UsageError for invalid parameters and NumericError if any
/// intermediate goes nonfinite (values are never clipped).
double garch_nll(const GarchModel& model, std::span<const double> residuals);

/// One-step-ahead variance forecast from the last in-sample residual and
/// filtered variance.
double garch_one_step_variance(const GarchModel& model, double last_residual,
                               double last_variance);

/// Unconstrained reparameterization used by the fitter:
/// u0 = ln omega, u1 = logit(alpha + beta), u2 = logit(alpha / (alpha + beta)).
/// Any u in R^3 maps to omega > 0, alpha >= 0, beta >= 0, alpha + beta < 1.
std::array<double, 3> garch_to_unconstrained(double omega, double alpha, double beta);
std::array<double, 3> garch_from_unconstrained(const std::array<double, 3>& u);

enum class VarianceInit {
    SampleVariance,  // sigma2_1 = sample variance of the residuals
    Unconditional,   // sigma2_1 = omega / (1 - alpha - beta)
};

struct GarchFitOptions {
    VarianceInit init = VarianceInit::SampleVariance;
    NelderMeadOptions optimizer{};
    /// Starting (alpha, beta) pairs for the multi-start search; omega
    /// starts at sample_variance * (1 - alpha - beta) in each case.
    std::vector<std::pair<double, double>> starts = {{0.05, 0.90}, {0.10, 0.80}, {0.20, 0.60}};
};

/// Maximum-likelihood GARCH(1,1) fit by multi-start Nelder-Mead on the
/// unconstrained parameterization. Requires >= 50 residuals. Throws
/// NumericError when no start reaches a finite optimum.
GarchModel fit_garch(std::span<const double> residuals, const GarchFitOptions& options = {});

}  // namespace ets::forecast
