#pragma once

#include <Eigen/Dense>

namespace ets::stats {

/// Ordinary least squares fit with classical (homoskedastic) inference.
struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd t_stats;
    Eigen::VectorXd p_values;  // two-sided, Student-t with df_resid dof
    Eigen::VectorXd residuals;
    double r_squared = 0.0;
    double sigma2 = 0.0;  // residual variance estimate SSR / df_resid
    int n = 0;
    int df_resid = 0;
    /// Set when the residual variance is (numerically) zero: the fit is
    /// exact and standard errors carry no information. p-values are then
    /// 0 for nonzero coefficients and 1 otherwise.
    bool degenerate_inference = false;
};

/// Fits `response` on the columns of `design` (the caller includes any
/// intercept column). Solves by column-pivoted Householder QR; rank is
/// checked with a relative tolerance of 1e-10 against the largest column
/// norm. Throws InsufficientDataError when rows <= columns and
/// NumericError on rank deficiency.
OlsFit ols(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

}  // namespace ets::stats
