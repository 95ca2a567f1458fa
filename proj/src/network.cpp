#include "ets/network.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ets/errors.hpp"
#include "ets/format.hpp"

namespace ets::network {

TradeNetwork build_annual_network(const ingest::Dataset& ds, int year, Aggregation aggregation) {
    std::map<std::pair<RegistryCode, RegistryCode>, std::pair<double, std::size_t>> cells;
    std::set<RegistryCode> nodes;
    for (const auto& t : ds.transfers) {
        if (t.date.year != year || !t.value_eur) continue;
        auto& [sum, count] = cells[{t.from_registry, t.to_registry}];
        sum += *t.value_eur;
        ++count;
        nodes.insert(t.from_registry);
        nodes.insert(t.to_registry);
    }
    if (cells.empty()) {
        throw DataError("no valued transfers in year " + std::to_string(year));
    }

    TradeNetwork net;
    net.year = year;
    net.nodes.assign(nodes.begin(), nodes.end());
    const auto n = static_cast<Eigen::Index>(net.nodes.size());
    net.weights = Eigen::MatrixXd::Zero(n, n);

    auto index_of = [&](const RegistryCode& code) {
        return static_cast<Eigen::Index>(
            std::lower_bound(net.nodes.begin(), net.nodes.end(), code) - net.nodes.begin());
    };
    for (const auto& [key, agg] : cells) {
        const double value = aggregation == Aggregation::Mean
                                 ? agg.first / static_cast<double>(agg.second)
                                 : agg.first;
        net.weights(index_of(key.first), index_of(key.second)) = value;
    }
    return net;
}

NormalizedAdjacency normalize(const TradeNetwork& net) {
    if (net.weights.size() == 0) throw DataError("normalize: empty network");
    const double max_entry = net.weights.maxCoeff();
    if (!(max_entry > 0.0)) throw DataError("normalize: all weights are zero");
    NormalizedAdjacency adj;
    adj.year = net.year;
    adj.nodes = net.nodes;
    adj.matrix = net.weights / max_entry;
    return adj;
}

CentralityResult eigenvector_centrality(const NormalizedAdjacency& adjacency,
                                        const CentralityOptions& options) {
    const Eigen::Index n = adjacency.matrix.rows();
    if (n == 0) throw DataError("eigenvector_centrality: empty adjacency");
    if (adjacency.matrix.minCoeff() < 0.0) {
        throw UsageError("eigenvector_centrality: negative adjacency entries");
    }
    Eigen::MatrixXd a = options.transpose ? adjacency.matrix.transpose() : adjacency.matrix;
    if (options.damping > 0.0) {
        a.array() += options.damping;
    }
    if (!(a.maxCoeff() > 0.0)) {
        throw DataError("eigenvector_centrality: adjacency has no positive entry");
    }

    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    CentralityResult result;
    result.damping = options.damping;
    for (int iter = 1; iter <= options.max_iter; ++iter) {
        Eigen::VectorXd y = a * x;
        const double norm = y.norm();
        if (!(norm > 0.0)) {
            throw NumericError("eigenvector_centrality: iterate collapsed to zero after " +
                               std::to_string(iter) + " sweeps (reducible structure)");
        }
        y /= norm;
        const double delta = (y - x).norm();
        x = y;
        result.iterations = iter;
        if (delta < options.tol) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged) {
        throw NumericError("eigenvector_centrality: no convergence within " +
                           std::to_string(options.max_iter) +
                           " iterations (reducible or periodic structure)");
    }
    // Nonnegative representative; the start is positive and A nonnegative,
    // so entries can only be pushed to zero, never negative.
    result.x = x.cwiseMax(0.0);
    result.x /= result.x.norm();
    result.lambda = result.x.dot(a * result.x);
    result.proportions = result.x.array().square();
    return result;
}

CentralityTimeseries centrality_timeseries(const ingest::Dataset& ds, int year_from, int year_to,
                                           Aggregation aggregation,
                                           const CentralityOptions& options) {
    if (year_from > year_to) throw UsageError("centrality_timeseries: empty year range");

    std::map<int, std::map<RegistryCode, double>> per_year;
    std::set<RegistryCode> all_nodes;
    CentralityTimeseries ts;
    for (int year = year_from; year <= year_to; ++year) {
        try {
            const TradeNetwork net = build_annual_network(ds, year, aggregation);
            const CentralityResult res = eigenvector_centrality(normalize(net), options);
            auto& row = per_year[year];
            for (std::size_t i = 0; i < net.nodes.size(); ++i) {
                row[net.nodes[i]] = res.proportions[static_cast<Eigen::Index>(i)];
                all_nodes.insert(net.nodes[i]);
            }
        } catch (const Error& e) {
            ts.errors.push_back(std::to_string(year) + ": " + e.what());
            per_year[year];  // year present, all proportions 0
        }
    }

    for (const auto& [year, row] : per_year) {
        for (const auto& node : all_nodes) {
            auto it = row.find(node);
            ts.cells.push_back({year, node, it == row.end() ? 0.0 : it->second});
        }
    }
    return ts;
}

std::string export_network(const TradeNetwork& net, double edge_threshold,
                           double node_threshold) {
    std::string dot = "digraph trade_" + std::to_string(net.year) + " {\n";
    dot += "  rankdir=LR;\n";
    dot += "  node [shape=circle, fixedsize=true, width=0.75];\n";
    const auto n = static_cast<Eigen::Index>(net.nodes.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double self = net.weights(i, i);
        dot += "  \"" + net.nodes[static_cast<std::size_t>(i)].str() + "\"";
        if (node_threshold > 0.0 && self >= node_threshold) {
            // Area tracks self-trade value relative to the threshold.
            const double width = 0.75 * std::sqrt(self / node_threshold);
            dot += " [width=" + format_fixed(std::min(width, 5.0), 2) + "]";
        }
        dot += ";\n";
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            const double w = net.weights(i, j);
            if (w <= 0.0 || w < edge_threshold) continue;
            dot += "  \"" + net.nodes[static_cast<std::size_t>(i)].str() + "\" -> \"" +
                   net.nodes[static_cast<std::size_t>(j)].str() + "\" [label=\"" +
                   format_fixed(w, 2) + "\"];\n";
        }
    }
    dot += "}\n";
    return dot;
}

}  // namespace ets::network
