#pragma once

#include <Eigen/Dense>
#include <functional>

namespace ets {

struct NelderMeadOptions {
    int max_iter = 2000;
    /// Converged when the simplex diameter (max vertex distance from the
    /// best vertex) drops below this.
    double diameter_tol = 1e-8;
    /// Initial simplex step per coordinate, relative to max(1, |x0_i|).
    double initial_step = 0.25;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Derivative-free downhill-simplex minimization. The objective may
/// return +infinity to mark infeasible points; it must never throw.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start,
                             const NelderMeadOptions& options = {});

}  // namespace ets
