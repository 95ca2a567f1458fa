#include "ets/elasticity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "ets/errors.hpp"
#include "ets/format.hpp"
#include "ets/lad.hpp"
#include "ets/ols.hpp"
#include "ets/rng.hpp"
#include "ets/special.hpp"

namespace ets::elasticity {

std::string_view to_string(FitMethod m) { return m == FitMethod::Ols ? "OLS" : "LAD"; }

ElasticityOptions::ElasticityOptions()
    : registries{RegistryCode::parse("FR"), RegistryCode::parse("DE"),
                 RegistryCode::parse("GB")} {}

std::vector<FlowObservation> build_flows(const ingest::Dataset& ds, RegistryCode from,
                                         RegistryCode to, const PeriodSegmentation& seg,
                                         std::size_t period_index,
                                         const ElasticityOptions& options) {
    if (period_index >= seg.size()) throw UsageError("build_flows: period index out of range");

    std::map<Date, std::pair<double, std::size_t>> daily;  // date -> (sum qty, transfer count)
    for (const auto& t : ds.transfers) {
        if (t.from_registry != from || t.to_registry != to) continue;
        if (t.date < seg.window_start() || seg.window_end() < t.date) continue;
        if (seg.index_of(t.date) != period_index) continue;
        auto& [qty, count] = daily[t.date];
        qty += static_cast<double>(t.quantity);
        ++count;
    }

    const ingest::SecondaryPriceIndex prices(ds.prices);
    std::vector<FlowObservation> obs;
    obs.reserve(daily.size());
    for (const auto& [date, agg] : daily) {
        const double quantity =
            options.daily_mean ? agg.first / static_cast<double>(agg.second) : agg.first;
        if (!(quantity > 0.0)) continue;
        const double price = prices.lookup(date, options.price_max_gap_days);
        if (std::isnan(price)) continue;
        obs.push_back({date, std::log(quantity), std::log(price)});
    }
    return obs;
}

namespace {

ElasticityEstimate make_skeleton(RegistryCode from, RegistryCode to, const std::string& period,
                                 FitMethod method) {
    ElasticityEstimate e;
    e.from = from;
    e.to = to;
    e.period = period;
    e.method = method;
    return e;
}

bool precheck(std::span<const FlowObservation> obs, const ElasticityOptions& options,
              ElasticityEstimate& e) {
    e.n = static_cast<int>(obs.size());
    if (e.n < options.min_n) {
        e.skip_reason = "insufficient observations (n = " + std::to_string(e.n) + " < " +
                        std::to_string(options.min_n) + ")";
        return false;
    }
    const bool varying = std::any_of(obs.begin(), obs.end(), [&](const FlowObservation& o) {
        return o.log_p != obs.front().log_p;
    });
    if (!varying) {
        e.skip_reason = "no price variation in the period";
        return false;
    }
    return true;
}

}  // namespace

ElasticityEstimate fit_ols_loglog(std::span<const FlowObservation> obs, RegistryCode from,
                                  RegistryCode to, const std::string& period,
                                  const ElasticityOptions& options) {
    ElasticityEstimate e = make_skeleton(from, to, period, FitMethod::Ols);
    if (!precheck(obs, options, e)) return e;

    const auto n = static_cast<Eigen::Index>(obs.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = 1.0;
        design(i, 1) = obs[static_cast<std::size_t>(i)].log_p;
        y[i] = obs[static_cast<std::size_t>(i)].log_q;
    }
    const stats::OlsFit fit = stats::ols(design, y);
    e.beta0 = fit.coefficients[0];
    e.beta1 = fit.coefficients[1];
    e.p0 = fit.p_values[0];
    e.p1 = fit.p_values[1];
    e.significant = e.p1 < options.significance;
    e.valid = true;
    return e;
}

ElasticityEstimate fit_lad_loglog(std::span<const FlowObservation> obs, RegistryCode from,
                                  RegistryCode to, const std::string& period,
                                  const ElasticityOptions& options) {
    ElasticityEstimate e = make_skeleton(from, to, period, FitMethod::Lad);
    if (!precheck(obs, options, e)) return e;

    const std::size_t n = obs.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = obs[i].log_p;
        y[i] = obs[i].log_q;
    }
    const LadLine fit = lad_fit(x, y);
    e.beta0 = fit.intercept;
    e.beta1 = fit.slope;

    // Nonparametric bootstrap with index streams pre-assigned per
    // replicate, so replicate order cannot affect the result. Replicates
    // take the IRLS path for speed; the point estimate above keeps the
    // exact solver where its size admits it.
    const int reps = options.bootstrap_reps;
    if (reps < 2) throw UsageError("fit_lad_loglog: bootstrap_reps must be >= 2");
    std::vector<double> boot_b0, boot_b1;
    boot_b0.reserve(static_cast<std::size_t>(reps));
    boot_b1.reserve(static_cast<std::size_t>(reps));
    std::vector<double> rx(n), ry(n);
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng = Rng::for_task(options.seed, static_cast<std::uint64_t>(rep));
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = rng.below(n);
            rx[i] = x[k];
            ry[i] = y[k];
        }
        try {
            const LadLine r = lad_fit_irls(rx, ry);
            boot_b0.push_back(r.intercept);
            boot_b1.push_back(r.slope);
        } catch (const DataError&) {
            // Degenerate resample (all abscissae equal); skip it.
        }
    }
    if (boot_b0.size() < 2) {
        e.skip_reason = "bootstrap degenerate: fewer than 2 usable replicates";
        return e;
    }

    auto sd = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double q : v) m += q;
        m /= static_cast<double>(v.size());
        double s = 0.0;
        for (double q : v) s += (q - m) * (q - m);
        return std::sqrt(s / static_cast<double>(v.size() - 1));
    };
    auto pvalue = [](double estimate, double se) {
        if (se > 0.0) return 2.0 * stats::norm_sf(std::fabs(estimate) / se);
        return estimate == 0.0 ? 1.0 : 0.0;
    };
    e.p0 = pvalue(e.beta0, sd(boot_b0));
    e.p1 = pvalue(e.beta1, sd(boot_b1));
    e.significant = e.p1 < options.significance;
    e.valid = true;
    return e;
}

ElasticityReport elasticity_report(const ingest::Dataset& ds, const PeriodSegmentation& seg,
                                   const ElasticityOptions& options) {
    if (options.registries.empty()) throw UsageError("elasticity_report: no registries");
    std::vector<RegistryCode> regs = options.registries;
    std::sort(regs.begin(), regs.end());
    regs.erase(std::unique(regs.begin(), regs.end()), regs.end());

    ElasticityReport report;
    for (const RegistryCode& from : regs) {
        for (const RegistryCode& to : regs) {
            for (std::size_t period = 0; period < seg.size(); ++period) {
                const auto obs = build_flows(ds, from, to, seg, period, options);
                const std::string& label = seg.labels()[period];
                report.rows.push_back(fit_ols_loglog(obs, from, to, label, options));
                report.rows.push_back(fit_lad_loglog(obs, from, to, label, options));
            }
        }
    }
    return report;
}

std::string elasticity_graph(std::span<const ElasticityEstimate> estimates,
                             const std::string& period, FitMethod method) {
    std::vector<const ElasticityEstimate*> in_period;
    std::vector<RegistryCode> nodes;
    for (const auto& e : estimates) {
        if (e.period != period || e.method != method) continue;
        in_period.push_back(&e);
        nodes.push_back(e.from);
        nodes.push_back(e.to);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::string dot = "digraph elasticity_" + sanitize_label(period) + " {\n";
    dot += "  rankdir=LR;\n";
    dot += "  node [shape=circle];\n";
    for (const auto& node : nodes) {
        const ElasticityEstimate* self = nullptr;
        for (const auto* e : in_period) {
            if (e->from == node && e->to == node) self = e;
        }
        if (self != nullptr && self->valid) {
            dot += "  \"" + node.str() + "\" [label=\"" + node.str() + "\\n" +
                   format_fixed(self->beta1, 2) + "\"];\n";
        } else {
            dot += "  // warning: no internal elasticity estimate for " + node.str() + "\n";
            dot += "  \"" + node.str() + "\";\n";
        }
    }
    for (const auto* e : in_period) {
        if (e->from == e->to || !e->valid || !e->significant) continue;
        dot += "  \"" + e->from.str() + "\" -> \"" + e->to.str() + "\" [label=\"" +
               format_fixed(e->beta1, 2) + "\"];\n";
    }
    dot += "}\n";
    return dot;
}

std::string significance_stars(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

std::string sanitize_label(const std::string& label) {
    std::string out;
    for (char c : label) {
        if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
            out += c;
        } else if (out.empty() || out.back() != '_') {
            out += '_';
        }
    }
    return out;
}

}  // namespace ets::elasticity
