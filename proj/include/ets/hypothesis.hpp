#pragma once

#include <optional>
#include <span>
#include <string>

namespace ets::stats {

enum class TestConclusion { RejectH0, FailToReject };

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
    int lags_used = 0;
    double alpha = 0.05;
    TestConclusion conclusion = TestConclusion::FailToReject;
};

/// Deterministic-term specification of the Dickey-Fuller regression.
enum class AdfSpec { NoConstant, Constant, ConstantTrend };

struct AdfOptions {
    AdfSpec spec = AdfSpec::Constant;
    /// Upper bound for AIC lag selection. Default: Schwert's rule
    /// floor(12 * (n/100)^(1/4)), capped so the regression keeps
    /// positive degrees of freedom.
    std::optional<int> max_lag;
    /// Skip AIC selection and use exactly this many augmentation lags.
    std::optional<int> fixed_lag;
    double alpha = 0.05;
};

/// Augmented Dickey-Fuller unit-root test.
///
/// Regresses dy_t on y_{t-1}, the chosen deterministic terms, and
/// dy_{t-1}..dy_{t-k}; the statistic is the t-ratio on y_{t-1}. The lag
/// order k is selected by AIC over 0..max_lag on a common sample, then
/// the reported regression is refit on the longest sample for that k.
/// p-values use the MacKinnon (1994) response-surface approximation,
/// clamped to [1e-20, 1]. Requires length >= 20 and a non-constant
/// series.
TestResult adf_test(std::span<const double> series, const AdfOptions& options = {});

/// Engle's ARCH-LM test: regress e_t^2 on a constant and its own first
/// `lags` lags; the statistic is (regression n) * R^2, chi-squared with
/// `lags` degrees of freedom under the null of no ARCH effects. A
/// constant squared series yields statistic 0 and p-value 1.
TestResult arch_lm_test(std::span<const double> residuals, int lags = 5, double alpha = 0.05);

/// MacKinnon response-surface p-value for an ADF t-statistic (exposed
/// for tests).
double mackinnon_pvalue(double stat, AdfSpec spec);

}  // namespace ets::stats
