#include "ets/ols.hpp"

#include <cmath>

#include "ets/errors.hpp"
#include "ets/special.hpp"

namespace ets::stats {

OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p = design.cols();
    if (response.size() != n) throw UsageError("ols: design and response sizes differ");
    if (p < 1) throw UsageError("ols: empty design matrix");
    if (n <= p) {
        throw InsufficientDataError("ols: need more observations (" + std::to_string(n) +
                                    ") than regressors (" + std::to_string(p) + ")");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) {
        throw NumericError("ols: design matrix is rank deficient (rank " +
                           std::to_string(qr.rank()) + " of " + std::to_string(p) + ")");
    }

    OlsFit fit;
    fit.n = static_cast<int>(n);
    fit.df_resid = static_cast<int>(n - p);
    fit.coefficients = qr.solve(response);
    fit.residuals = response - design * fit.coefficients;

    const double ssr = fit.residuals.squaredNorm();
    fit.sigma2 = ssr / fit.df_resid;

    // (X'X)^-1 from the pivoted factorization X P = Q R:
    // (X'X)^-1 = P R^-1 R^-T P'.
    Eigen::MatrixXd rinv = qr.matrixR()
                               .topLeftCorner(p, p)
                               .template triangularView<Eigen::Upper>()
                               .solve(Eigen::MatrixXd::Identity(p, p));
    Eigen::MatrixXd xtx_inv = rinv * rinv.transpose();
    xtx_inv = qr.colsPermutation() * xtx_inv * qr.colsPermutation().transpose();

    const double y_scale = response.squaredNorm();
    fit.degenerate_inference = ssr <= 1e-24 * std::max(1.0, y_scale);

    fit.standard_errors.resize(p);
    fit.t_stats.resize(p);
    fit.p_values.resize(p);
    const double coef_scale = fit.coefficients.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < p; ++j) {
        if (fit.degenerate_inference) {
            fit.standard_errors[j] = 0.0;
            const bool nonzero = std::fabs(fit.coefficients[j]) > 1e-12 * std::max(1.0, coef_scale);
            fit.t_stats[j] = nonzero ? std::numeric_limits<double>::infinity() : 0.0;
            fit.p_values[j] = nonzero ? 0.0 : 1.0;
        } else {
            fit.standard_errors[j] = std::sqrt(fit.sigma2 * xtx_inv(j, j));
            fit.t_stats[j] = fit.coefficients[j] / fit.standard_errors[j];
            fit.p_values[j] = 2.0 * t_sf(std::fabs(fit.t_stats[j]), fit.df_resid);
        }
    }

    const double y_mean = response.mean();
    const double sst = (response.array() - y_mean).square().sum();
    if (sst > 0.0) {
        fit.r_squared = std::clamp(1.0 - ssr / sst, 0.0, 1.0);
    } else {
        fit.r_squared = 0.0;
    }
    return fit;
}

}  // namespace ets::stats
