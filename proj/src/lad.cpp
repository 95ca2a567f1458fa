#include "ets/lad.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ets/errors.hpp"

namespace ets::elasticity {

namespace {

constexpr std::size_t kExactLimit = 500;
constexpr double kIrlsDelta = 1e-8;
constexpr std::size_t kPolishPoints = 40;

void check_input(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw UsageError("lad: x and y sizes differ");
    if (x.size() < 2) throw InsufficientDataError("lad: need at least 2 points");
    const bool has_distinct = std::any_of(x.begin(), x.end(),
                                          [&](double v) { return v != x.front(); });
    if (!has_distinct) throw DataError("lad: all abscissae equal, slope unidentified");
}

// Best candidate line through pairs drawn from `idx`, judged on the full
// data. Returns false if every pair shares an abscissa.
bool best_pair_line(std::span<const double> x, std::span<const double> y,
                    std::span<const std::size_t> idx, LadLine& best) {
    bool found = false;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const std::size_t i = idx[a];
            const std::size_t j = idx[b];
            if (x[i] == x[j]) continue;
            const double slope = (y[j] - y[i]) / (x[j] - x[i]);
            const double intercept = y[i] - slope * x[i];
            const double obj = lad_objective(x, y, intercept, slope);
            if (!found || obj < best.objective) {
                best = {intercept, slope, obj};
                found = true;
            }
        }
    }
    return found;
}

}  // namespace

double lad_objective(std::span<const double> x, std::span<const double> y, double intercept,
                     double slope) {
    double obj = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        obj += std::fabs(y[i] - intercept - slope * x[i]);
    }
    return obj;
}

LadLine lad_fit_exact(std::span<const double> x, std::span<const double> y) {
    check_input(x, y);
    std::vector<std::size_t> all(x.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    LadLine best;
    if (!best_pair_line(x, y, all, best)) {
        throw DataError("lad: all abscissae equal, slope unidentified");
    }
    return best;
}

LadLine lad_fit_irls(std::span<const double> x, std::span<const double> y) {
    check_input(x, y);
    const std::size_t n = x.size();

    // Plain least squares as the starting point.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double nn = static_cast<double>(n);
    double det = nn * sxx - sx * sx;
    if (det == 0.0) throw DataError("lad: all abscissae equal, slope unidentified");
    double slope = (nn * sxy - sx * sy) / det;
    double intercept = (sy - slope * sx) / nn;

    for (int iter = 0; iter < 200; ++iter) {
        double sw = 0.0, swx = 0.0, swy = 0.0, swxx = 0.0, swxy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = y[i] - intercept - slope * x[i];
            const double w = 1.0 / std::sqrt(r * r + kIrlsDelta);
            sw += w;
            swx += w * x[i];
            swy += w * y[i];
            swxx += w * x[i] * x[i];
            swxy += w * x[i] * y[i];
        }
        det = sw * swxx - swx * swx;
        if (det == 0.0) break;
        const double new_slope = (sw * swxy - swx * swy) / det;
        const double new_intercept = (swy - new_slope * swx) / sw;
        const double step = std::max(std::fabs(new_slope - slope),
                                     std::fabs(new_intercept - intercept));
        slope = new_slope;
        intercept = new_intercept;
        if (step < 1e-12 * std::max({1.0, std::fabs(slope), std::fabs(intercept)})) break;
    }

    LadLine smooth{intercept, slope, lad_objective(x, y, intercept, slope)};

    // Polish: the optimum interpolates two points, so enumerate pairs
    // among the points the smooth solution already fits best.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ra = std::fabs(y[a] - intercept - slope * x[a]);
        const double rb = std::fabs(y[b] - intercept - slope * x[b]);
        return ra < rb;
    });
    order.resize(std::min(n, kPolishPoints));

    LadLine polished;
    if (best_pair_line(x, y, order, polished) && polished.objective < smooth.objective) {
        return polished;
    }
    return smooth;
}

LadLine lad_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() <= kExactLimit) return lad_fit_exact(x, y);
    return lad_fit_irls(x, y);
}

}  // namespace ets::elasticity
