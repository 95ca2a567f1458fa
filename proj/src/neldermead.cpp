#include "ets/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "ets/errors.hpp"

namespace ets {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options) {
    const Eigen::Index dim = start.size();
    if (dim < 1) throw UsageError("nelder_mead: empty start point");

    // Standard coefficients: reflection, expansion, contraction, shrink.
    constexpr double kAlpha = 1.0;
    constexpr double kGamma = 2.0;
    constexpr double kRho = 0.5;
    constexpr double kSigma = 0.5;

    std::vector<Eigen::VectorXd> verts(static_cast<std::size_t>(dim) + 1, start);
    for (Eigen::Index i = 0; i < dim; ++i) {
        verts[static_cast<std::size_t>(i) + 1][i] +=
            options.initial_step * std::max(1.0, std::fabs(start[i]));
    }
    std::vector<double> fvals(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) fvals[i] = objective(verts[i]);

    std::vector<std::size_t> order(verts.size());
    std::iota(order.begin(), order.end(), 0);
    auto sort_vertices = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    };

    NelderMeadResult result;
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        sort_vertices();
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[order.size() - 2];

        double diameter = 0.0;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            diameter = std::max(diameter, (verts[i] - verts[best]).norm());
        }
        if (diameter < options.diameter_tol) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
        for (std::size_t i = 0; i < verts.size(); ++i) {
            if (i != worst) centroid += verts[i];
        }
        centroid /= static_cast<double>(dim);

        const Eigen::VectorXd reflected = centroid + kAlpha * (centroid - verts[worst]);
        const double f_reflected = objective(reflected);

        if (f_reflected < fvals[best]) {
            const Eigen::VectorXd expanded = centroid + kGamma * (reflected - centroid);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                verts[worst] = expanded;
                fvals[worst] = f_expanded;
            } else {
                verts[worst] = reflected;
                fvals[worst] = f_reflected;
            }
        } else if (f_reflected < fvals[second_worst]) {
            verts[worst] = reflected;
            fvals[worst] = f_reflected;
        } else {
            const bool outside = f_reflected < fvals[worst];
            const Eigen::VectorXd contracted =
                outside ? Eigen::VectorXd(centroid + kRho * (reflected - centroid))
                        : Eigen::VectorXd(centroid - kRho * (centroid - verts[worst]));
            const double f_contracted = objective(contracted);
            if (f_contracted < std::min(f_reflected, fvals[worst])) {
                verts[worst] = contracted;
                fvals[worst] = f_contracted;
            } else {
                for (std::size_t i = 0; i < verts.size(); ++i) {
                    if (i == best) continue;
                    verts[i] = verts[best] + kSigma * (verts[i] - verts[best]);
                    fvals[i] = objective(verts[i]);
                }
            }
        }
    }

    sort_vertices();
    result.x = verts[order.front()];
    result.fx = fvals[order.front()];
    result.iterations = iter;
    return result;
}

}  // namespace ets
