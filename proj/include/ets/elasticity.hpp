#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ets/core.hpp"
#include "ets/ingest.hpp"

namespace ets::elasticity {

/// One day's aggregated flow for a registry pair: log of the summed
/// quantity against the log of that day's secondary spot price.
struct FlowObservation {
    Date date;
    double log_q = 0.0;
    double log_p = 0.0;
};

enum class FitMethod { Ols, Lad };

std::string_view to_string(FitMethod m);

/// Estimated log-log price-quantity relation for one (from, to, period)
/// cell: log Q = beta0 + beta1 * log P, beta1 being the price elasticity.
struct ElasticityEstimate {
    RegistryCode from;
    RegistryCode to;
    std::string period;
    FitMethod method = FitMethod::Ols;
    double beta0 = 0.0;
    double beta1 = 0.0;
    double p0 = 1.0;
    double p1 = 1.0;
    int n = 0;
    bool significant = false;  // p1 < significance level
    /// False when the cell could not be estimated; skip_reason explains.
    bool valid = false;
    std::string skip_reason;
};

struct ElasticityOptions {
    std::vector<RegistryCode> registries;  // default FR, DE, GB
    int min_n = 30;
    double significance = 0.05;
    int bootstrap_reps = 999;
    std::uint64_t seed = 42;
    /// Aggregate same-day quantities by mean instead of sum.
    bool daily_mean = false;
    int price_max_gap_days = 7;

    ElasticityOptions();
};

/// Daily flow observations for one registry pair within one period of the
/// segmentation. Quantities are summed per calendar day (mean optional);
/// days with no flow, or no secondary price within the fill gap, are
/// omitted.
std::vector<FlowObservation> build_flows(const ingest::Dataset& ds, RegistryCode from,
                                         RegistryCode to, const PeriodSegmentation& seg,
                                         std::size_t period_index,
                                         const ElasticityOptions& options = {});

/// OLS fit of log_q on (1, log_p) with classical t-test p-values.
/// Requires n >= min_n and non-constant log_p (reported via the
/// estimate's valid flag and skip_reason rather than exceptions).
ElasticityEstimate fit_ols_loglog(std::span<const FlowObservation> obs, RegistryCode from,
                                  RegistryCode to, const std::string& period,
                                  const ElasticityOptions& options = {});

/// LAD (median regression) fit: exact pair-enumeration solver for
/// n <= 500, IRLS with pair polish above. Standard errors and
/// normal-approximation p-values come from a seeded nonparametric
/// bootstrap (replicates use the fast IRLS path).
ElasticityEstimate fit_lad_loglog(std::span<const FlowObservation> obs, RegistryCode from,
                                  RegistryCode to, const std::string& period,
                                  const ElasticityOptions& options = {});

struct ElasticityReport {
    std::vector<ElasticityEstimate> rows;  // (from, to, period) x {OLS, LAD}
};

/// Full estimate table over registries x registries x periods x methods,
/// ordered by (from, to, period, method). Cells that cannot be estimated
/// appear as invalid rows with a reason.
ElasticityReport elasticity_report(const ingest::Dataset& ds, const PeriodSegmentation& seg,
                                   const ElasticityOptions& options = {});

/// DOT digraph for one period: node labels carry the within-registry
/// elasticity, directed edges the significant cross-registry
/// elasticities; insignificant or invalid external estimates are
/// omitted. A missing self estimate leaves the node unlabeled with a
/// warning comment.
std::string elasticity_graph(std::span<const ElasticityEstimate> estimates,
                             const std::string& period, FitMethod method = FitMethod::Ols);

/// Table-note star convention: *** p<0.001, ** p<0.01, * p<0.05.
std::string significance_stars(double p);

/// ASCII identifier form of a period label (non-alphanumerics collapse
/// to single underscores); used in DOT graph names and file names.
std::string sanitize_label(const std::string& label);

}  // namespace ets::elasticity
