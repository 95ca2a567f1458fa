#include "ets/hypothesis.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "ets/errors.hpp"
#include "ets/ols.hpp"
#include "ets/special.hpp"

namespace ets::stats {

namespace {

// Response-surface coefficients for the asymptotic ADF t-distribution,
// MacKinnon (1994): p = Phi(c0 + c1*tau + c2*tau^2 [+ c3*tau^3]), with a
// separate polynomial on each side of tau_star and hard cutoffs outside
// [tau_min, tau_max]. Single-series (no cointegration) case.
struct MackinnonSurface {
    double tau_min, tau_max, tau_star;
    double small[3];  // used for tau <= tau_star
    double large[4];  // used for tau > tau_star
};

constexpr MackinnonSurface kSurfaceNoConstant{
    -19.04, std::numeric_limits<double>::infinity(), -1.04,
    {0.6344, 1.2378, 0.032496},
    {0.4797, 0.93557, -0.06999, 0.033066}};

constexpr MackinnonSurface kSurfaceConstant{
    -18.83, 2.74, -1.61,
    {2.1659, 1.4412, 0.038269},
    {1.7339, 0.93202, -0.12745, -0.010368}};

constexpr MackinnonSurface kSurfaceConstantTrend{
    -16.18, 0.70, -2.89,
    {3.2512, 1.6047, 0.049588},
    {2.5261, 0.61654, -0.37956, -0.060285}};

const MackinnonSurface& surface_for(AdfSpec spec) {
    switch (spec) {
        case AdfSpec::NoConstant: return kSurfaceNoConstant;
        case AdfSpec::Constant: return kSurfaceConstant;
        case AdfSpec::ConstantTrend: return kSurfaceConstantTrend;
    }
    return kSurfaceConstant;
}

constexpr double kPvalueFloor = 1e-20;

int deterministic_terms(AdfSpec spec) {
    switch (spec) {
        case AdfSpec::NoConstant: return 0;
        case AdfSpec::Constant: return 1;
        case AdfSpec::ConstantTrend: return 2;
    }
    return 1;
}

// Builds the ADF regression on the sample trimmed for `k` augmentation
// lags and returns the fit plus the column index of y_{t-1}.
struct AdfRegression {
    OlsFit fit;
    Eigen::Index level_col = 0;
    Eigen::Index rows = 0;
};

AdfRegression adf_regression(std::span<const double> y, int k, AdfSpec spec) {
    const auto n = static_cast<Eigen::Index>(y.size());
    const Eigen::Index rows = n - 1 - k;
    const int ntrend = deterministic_terms(spec);
    const Eigen::Index cols = 1 + ntrend + k;

    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd dy(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Eigen::Index t = i + 1 + k;  // index of dy_t in the original series
        dy[i] = y[static_cast<std::size_t>(t)] - y[static_cast<std::size_t>(t - 1)];
        Eigen::Index c = 0;
        design(i, c++) = y[static_cast<std::size_t>(t - 1)];
        if (spec != AdfSpec::NoConstant) design(i, c++) = 1.0;
        if (spec == AdfSpec::ConstantTrend) design(i, c++) = static_cast<double>(i + 1);
        for (int j = 1; j <= k; ++j) {
            design(i, c++) = y[static_cast<std::size_t>(t - j)] -
                             y[static_cast<std::size_t>(t - j - 1)];
        }
    }
    return AdfRegression{ols(design, dy), 0, rows};
}

}  // namespace

double mackinnon_pvalue(double stat, AdfSpec spec) {
    const MackinnonSurface& s = surface_for(spec);
    if (stat > s.tau_max) return 1.0;
    if (stat < s.tau_min) return kPvalueFloor;
    double z;
    if (stat <= s.tau_star) {
        z = s.small[0] + stat * (s.small[1] + stat * s.small[2]);
    } else {
        z = s.large[0] + stat * (s.large[1] + stat * (s.large[2] + stat * s.large[3]));
    }
    // Phi(z) evaluated as the upper tail of -z; the direct 1 - sf(z) form
    // cancels to zero for the deep-left-tail statistics this test meets.
    const double p = norm_sf(-z);
    return std::clamp(p, kPvalueFloor, 1.0);
}

TestResult adf_test(std::span<const double> series, const AdfOptions& options) {
    const std::size_t n = series.size();
    if (n < 20) throw InsufficientDataError("adf_test: need at least 20 observations");
    bool constant_series = true;
    for (double v : series) {
        if (v != series[0]) {
            constant_series = false;
            break;
        }
    }
    if (constant_series) throw DataError("adf_test: constant series");

    const int ntrend = deterministic_terms(options.spec);
    int max_lag;
    if (options.fixed_lag) {
        max_lag = *options.fixed_lag;
    } else if (options.max_lag) {
        max_lag = *options.max_lag;
    } else {
        // Schwert's rule of thumb.
        max_lag = static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
    }
    // Keep the largest candidate regression comfortably overdetermined.
    const int cap = static_cast<int>(n) / 2 - ntrend - 2;
    max_lag = std::clamp(max_lag, 0, cap);

    int chosen = max_lag;
    if (!options.fixed_lag && max_lag > 0) {
        // AIC over 0..max_lag, every candidate fit on the sample trimmed
        // for max_lag so the likelihoods are comparable.
        const auto n_common = static_cast<Eigen::Index>(n) - 1 - max_lag;
        double best_aic = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= max_lag; ++k) {
            const Eigen::Index cols = 1 + ntrend + k;
            Eigen::MatrixXd design(n_common, cols);
            Eigen::VectorXd dy(n_common);
            for (Eigen::Index i = 0; i < n_common; ++i) {
                const Eigen::Index t = i + 1 + max_lag;
                dy[i] = series[static_cast<std::size_t>(t)] -
                        series[static_cast<std::size_t>(t - 1)];
                Eigen::Index c = 0;
                design(i, c++) = series[static_cast<std::size_t>(t - 1)];
                if (options.spec != AdfSpec::NoConstant) design(i, c++) = 1.0;
                if (options.spec == AdfSpec::ConstantTrend)
                    design(i, c++) = static_cast<double>(i + 1);
                for (int j = 1; j <= k; ++j) {
                    design(i, c++) = series[static_cast<std::size_t>(t - j)] -
                                     series[static_cast<std::size_t>(t - j - 1)];
                }
            }
            const OlsFit fit = ols(design, dy);
            const double ssr = fit.residuals.squaredNorm();
            const auto nn = static_cast<double>(n_common);
            const double aic = nn * std::log(ssr / nn) + 2.0 * static_cast<double>(cols);
            if (aic < best_aic) {
                best_aic = aic;
                chosen = k;
            }
        }
    }

    const AdfRegression reg = adf_regression(series, chosen, options.spec);
    const double stat = reg.fit.t_stats[reg.level_col];
    const double p = mackinnon_pvalue(stat, options.spec);

    TestResult result;
    result.name = "ADF";
    result.statistic = stat;
    result.p_value = p;
    result.lags_used = chosen;
    result.alpha = options.alpha;
    result.conclusion =
        p < options.alpha ? TestConclusion::RejectH0 : TestConclusion::FailToReject;
    return result;
}

TestResult arch_lm_test(std::span<const double> residuals, int lags, double alpha) {
    const std::size_t n = residuals.size();
    if (lags < 1) throw UsageError("arch_lm_test: lags must be >= 1");
    if (n < 2 * static_cast<std::size_t>(lags) + 2) {
        throw InsufficientDataError("arch_lm_test: series too short for " +
                                    std::to_string(lags) + " lags");
    }

    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = residuals[i] * residuals[i];

    const auto rows = static_cast<Eigen::Index>(n) - lags;
    Eigen::VectorXd y(rows);
    Eigen::MatrixXd design(rows, lags + 1);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::size_t t = static_cast<std::size_t>(i) + static_cast<std::size_t>(lags);
        y[i] = sq[t];
        design(i, 0) = 1.0;
        for (int j = 1; j <= lags; ++j) design(i, j) = sq[t - static_cast<std::size_t>(j)];
    }

    TestResult result;
    result.name = "ARCH-LM";
    result.lags_used = lags;
    result.alpha = alpha;

    const double sst = (y.array() - y.mean()).square().sum();
    if (sst <= 0.0) {
        // Constant squared residuals: no variation to explain.
        result.statistic = 0.0;
        result.p_value = 1.0;
        result.conclusion = TestConclusion::FailToReject;
        return result;
    }

    const OlsFit fit = ols(design, y);
    result.statistic = static_cast<double>(rows) * fit.r_squared;
    result.p_value = chi2_sf(result.statistic, lags);
    result.conclusion =
        result.p_value < alpha ? TestConclusion::RejectH0 : TestConclusion::FailToReject;
    return result;
}

}  // namespace ets::stats
