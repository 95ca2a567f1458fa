#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ets/core.hpp"
#include "ets/ingest.hpp"

namespace ets::network {

/// Registry-level weighted directed trade graph for one calendar year.
/// weights(i, j) aggregates the EUR value of transfers from node i to
/// node j; the diagonal holds within-registry (self-trade) value.
struct TradeNetwork {
    int year = 0;
    std::vector<RegistryCode> nodes;  // sorted, unique
    Eigen::MatrixXd weights;          // n x n, entries >= 0
};

enum class Aggregation {
    Mean,  // average per-transfer EUR value (default)
    Sum,   // total EUR value
};

/// Aggregates the year's valued transfers into a TradeNetwork. Unvalued
/// transfers are skipped; registries with no valued transfer that year do
/// not appear. Throws DataError when the year has no valued transfers.
TradeNetwork build_annual_network(const ingest::Dataset& ds, int year,
                                  Aggregation aggregation = Aggregation::Mean);

/// Adjacency scaled by the global maximum entry (self-loops included),
/// so every entry lies in [0, 1] and at least one equals 1.
struct NormalizedAdjacency {
    int year = 0;
    std::vector<RegistryCode> nodes;
    Eigen::MatrixXd matrix;
};

NormalizedAdjacency normalize(const TradeNetwork& net);

struct CentralityOptions {
    double tol = 1e-12;
    int max_iter = 10000;
    /// Compute the in-link variant (power iteration on the transpose).
    bool transpose = false;
    /// Optional uniform damping added to every entry before iterating;
    /// 0 disables it. Reported in output metadata when used.
    double damping = 0.0;
};

struct CentralityResult {
    Eigen::VectorXd x;            // unit-norm nonnegative eigenvector
    double lambda = 0.0;          // dominant eigenvalue (Rayleigh quotient)
    Eigen::VectorXd proportions;  // p_i = x_i^2, sums to 1
    int iterations = 0;
    bool converged = false;
    double damping = 0.0;
};

/// Dominant eigenvector by power iteration, x_i = (1/lambda) sum_j A_ij x_j,
/// from the uniform positive start vector with L2 normalization each
/// sweep. Converged when successive iterates differ by < tol in L2.
/// Throws NumericError on non-convergence (reducible or periodic
/// structures) with iteration diagnostics.
CentralityResult eigenvector_centrality(const NormalizedAdjacency& adjacency,
                                        const CentralityOptions& options = {});

struct CentralityCell {
    int year = 0;
    RegistryCode registry;
    double proportion = 0.0;  // 0 when the registry is absent that year
};

struct CentralityTimeseries {
    std::vector<CentralityCell> cells;  // ordered by (year, registry)
    std::vector<std::string> errors;    // per-year failures, non-fatal
};

/// Per-year centrality proportions over [year_from, year_to] for every
/// registry participating in any of those years.
CentralityTimeseries centrality_timeseries(const ingest::Dataset& ds, int year_from, int year_to,
                                           Aggregation aggregation = Aggregation::Mean,
                                           const CentralityOptions& options = {});

/// DOT digraph of the network. Every node is emitted; nodes whose
/// self-trade value reaches node_threshold get a width scaled by
/// sqrt(value / threshold). Off-diagonal edges appear only when their
/// weight is positive and >= edge_threshold. Output is byte-stable for
/// fixed inputs.
std::string export_network(const TradeNetwork& net, double edge_threshold,
                           double node_threshold);

}  // namespace ets::network
