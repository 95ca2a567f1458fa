#include "ets/ar.hpp"

#include <Eigen/Dense>

#include "ets/errors.hpp"
#include "ets/ols.hpp"

namespace ets::forecast {

ArModel fit_ar(std::span<const double> series, int order) {
    if (order < 1) throw UsageError("fit_ar: order must be >= 1");
    const std::size_t n = series.size();
    if (n < static_cast<std::size_t>(order) + 10) {
        throw InsufficientDataError("fit_ar: need at least order + 10 observations, got " +
                                    std::to_string(n));
    }

    bool constant = true;
    for (double v : series) {
        if (v != series[0]) {
            constant = false;
            break;
        }
    }
    if (constant) {
        ArModel m;
        m.order = order;
        m.intercept = series[0];
        m.coefficients.assign(static_cast<std::size_t>(order), 0.0);
        m.degenerate = true;
        return m;
    }

    const auto rows = static_cast<Eigen::Index>(n) - order;
    Eigen::MatrixXd design(rows, order + 1);
    Eigen::VectorXd y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const std::size_t t = static_cast<std::size_t>(i) + static_cast<std::size_t>(order);
        y[i] = series[t];
        design(i, 0) = 1.0;
        for (int j = 1; j <= order; ++j) {
            design(i, j) = series[t - static_cast<std::size_t>(j)];
        }
    }

    const stats::OlsFit fit = stats::ols(design, y);
    ArModel m;
    m.order = order;
    m.intercept = fit.coefficients[0];
    m.coefficients.resize(static_cast<std::size_t>(order));
    for (int j = 0; j < order; ++j) m.coefficients[static_cast<std::size_t>(j)] = fit.coefficients[j + 1];
    m.degenerate = fit.degenerate_inference;
    return m;
}

double ar_predict(const ArModel& model, std::span<const double> recent) {
    const auto order = static_cast<std::size_t>(model.order);
    if (recent.size() < order) throw UsageError("ar_predict: not enough recent observations");
    double mean = model.intercept;
    for (std::size_t j = 0; j < order; ++j) {
        mean += model.coefficients[j] * recent[recent.size() - 1 - j];
    }
    return mean;
}

std::vector<double> ar_residuals(const ArModel& model, std::span<const double> series) {
    const auto order = static_cast<std::size_t>(model.order);
    if (series.size() <= order) throw UsageError("ar_residuals: series shorter than order");
    std::vector<double> resid;
    resid.reserve(series.size() - order);
    for (std::size_t t = order; t < series.size(); ++t) {
        resid.push_back(series[t] - ar_predict(model, series.subspan(0, t)));
    }
    return resid;
}

}  // namespace ets::forecast
