#include "ets/garch.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ets/errors.hpp"
#include "ets/timeseries.hpp"

namespace ets::forecast {

namespace {

void check_model(const GarchModel& model) {
    if (!model.valid()) {
        throw UsageError("garch: parameters violate omega > 0, alpha, beta >= 0, "
                         "alpha + beta < 1, init_variance > 0");
    }
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

}  // namespace

std::vector<double> garch_filter(const GarchModel& model, std::span<const double> residuals) {
    check_model(model);
    if (residuals.empty()) throw UsageError("garch_filter: empty residual series");
    std::vector<double> sigma2(residuals.size());
    sigma2[0] = model.init_variance;
    for (std::size_t t = 1; t < residuals.size(); ++t) {
        sigma2[t] = model.omega + model.alpha * residuals[t - 1] * residuals[t - 1] +
                    model.beta * sigma2[t - 1];
    }
    return sigma2;
}

double garch_nll(const GarchModel& model, std::span<const double> residuals) {
    check_model(model);
    if (residuals.empty()) throw UsageError("garch_nll: empty residual series");
    constexpr double ln_two_pi = 1.8378770664093454836;
    double nll = 0.0;
    double sigma2 = model.init_variance;
    for (std::size_t t = 0; t < residuals.size(); ++t) {
        if (t > 0) {
            sigma2 = model.omega + model.alpha * residuals[t - 1] * residuals[t - 1] +
                     model.beta * sigma2;
        }
        const double term = ln_two_pi + std::log(sigma2) + residuals[t] * residuals[t] / sigma2;
        nll += 0.5 * term;
        if (!std::isfinite(nll)) {
            throw NumericError("garch_nll: nonfinite value at t = " + std::to_string(t));
        }
    }
    return nll;
}

double garch_one_step_variance(const GarchModel& model, double last_residual,
                               double last_variance) {
    check_model(model);
    return model.omega + model.alpha * last_residual * last_residual +
           model.beta * last_variance;
}

std::array<double, 3> garch_to_unconstrained(double omega, double alpha, double beta) {
    if (!(omega > 0.0) || alpha < 0.0 || beta < 0.0 || !(alpha + beta < 1.0)) {
        throw UsageError("garch_to_unconstrained: parameters outside the feasible region");
    }
    const double s = alpha + beta;
    // Interior clamp keeps logit finite at the alpha = 0 or beta = 0 edge.
    const double s_c = std::clamp(s, 1e-12, 1.0 - 1e-12);
    const double f_c = std::clamp(s > 0.0 ? alpha / s : 0.5, 1e-12, 1.0 - 1e-12);
    return {std::log(omega), logit(s_c), logit(f_c)};
}

std::array<double, 3> garch_from_unconstrained(const std::array<double, 3>& u) {
    const double omega = std::exp(u[0]);
    const double s = logistic(u[1]);
    const double f = logistic(u[2]);
    return {omega, s * f, s * (1.0 - f)};
}

GarchModel fit_garch(std::span<const double> residuals, const GarchFitOptions& options) {
    if (residuals.size() < 50) {
        throw InsufficientDataError("fit_garch: need at least 50 residuals, got " +
                                    std::to_string(residuals.size()));
    }
    bool constant = true;
    for (double v : residuals) {
        if (v != residuals[0]) {
            constant = false;
            break;
        }
    }
    if (constant) throw DataError("fit_garch: residuals are constant");
    const double svar = stats::sample_variance(residuals);
    if (!(svar > 0.0)) throw DataError("fit_garch: residuals have zero variance");

    auto make_model = [&](const std::array<double, 3>& u) {
        const auto [omega, alpha, beta] = garch_from_unconstrained(u);
        GarchModel m;
        m.omega = omega;
        m.alpha = alpha;
        m.beta = beta;
        m.init_variance = options.init == VarianceInit::SampleVariance
                              ? svar
                              : omega / (1.0 - alpha - beta);
        return m;
    };

    auto objective = [&](const Eigen::VectorXd& u) -> double {
        const std::array<double, 3> ua{u[0], u[1], u[2]};
        try {
            const GarchModel m = make_model(ua);
            if (!m.valid()) return std::numeric_limits<double>::infinity();
            return garch_nll(m, residuals);
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    double best_f = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_u;
    std::string diagnostics;
    for (std::size_t s = 0; s < options.starts.size(); ++s) {
        const auto [alpha0, beta0] = options.starts[s];
        const double omega0 = svar * (1.0 - alpha0 - beta0);
        const auto u0 = garch_to_unconstrained(omega0, alpha0, beta0);
        Eigen::VectorXd x0(3);
        x0 << u0[0], u0[1], u0[2];
        const NelderMeadResult r = nelder_mead(objective, x0, options.optimizer);
        diagnostics += "start " + std::to_string(s) + ": f = " + std::to_string(r.fx) +
                       ", iters = " + std::to_string(r.iterations) +
                       (r.converged ? "" : " (not converged)") + "; ";
        if (std::isfinite(r.fx) && r.fx < best_f) {
            best_f = r.fx;
            best_u = r.x;
        }
    }
    if (!std::isfinite(best_f)) {
        throw NumericError("fit_garch: no start point reached a finite optimum [" + diagnostics +
                           "]");
    }
    return make_model({best_u[0], best_u[1], best_u[2]});
}

}  // namespace ets::forecast
