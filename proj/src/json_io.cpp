#include "ets/json_io.hpp"

namespace ets::stats {

void to_json(nlohmann::json& j, const TestResult& r) {
    j = nlohmann::json{
        {"name", r.name},
        {"statistic", r.statistic},
        {"p_value", r.p_value},
        {"lags_used", r.lags_used},
        {"alpha", r.alpha},
        {"conclusion", r.conclusion == TestConclusion::RejectH0 ? "reject_h0" : "fail_to_reject"},
    };
}

void to_json(nlohmann::json& j, const OlsFit& f) {
    auto vec = [](const Eigen::VectorXd& v) {
        return std::vector<double>(v.data(), v.data() + v.size());
    };
    j = nlohmann::json{
        {"coefficients", vec(f.coefficients)},
        {"standard_errors", vec(f.standard_errors)},
        {"t_stats", vec(f.t_stats)},
        {"p_values", vec(f.p_values)},
        {"r_squared", f.r_squared},
        {"sigma2", f.sigma2},
        {"n", f.n},
        {"df_resid", f.df_resid},
        {"degenerate_inference", f.degenerate_inference},
    };
}

}  // namespace ets::stats

namespace ets::ingest {

void to_json(nlohmann::json& j, const ParseReport& r) {
    nlohmann::json issues = nlohmann::json::array();
    for (const auto& issue : r.issues) {
        issues.push_back({{"row", issue.row}, {"message", issue.message}});
    }
    j = nlohmann::json{
        {"path", r.path},
        {"total_rows", r.total_rows},
        {"accepted", r.accepted},
        {"skipped", r.skipped()},
        {"issues", issues},
    };
}

void to_json(nlohmann::json& j, const FlowSummary& s) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : s.pairs) {
        pairs.push_back({
            {"from_class", std::string(to_string(p.from))},
            {"to_class", std::string(to_string(p.to))},
            {"count", p.count},
            {"count_share", p.count_share},
            {"value_eur", p.value_eur},
            {"value_share", p.value_share},
        });
    }
    nlohmann::json regs = nlohmann::json::array();
    for (const auto& r : s.registries) {
        regs.push_back({
            {"registry", r.registry.str()},
            {"transfers_out", r.transfers_out},
            {"transfers_in", r.transfers_in},
            {"value_out", r.value_out},
            {"value_in", r.value_in},
        });
    }
    j = nlohmann::json{
        {"pairs", pairs},
        {"registries", regs},
        {"unvalued_transfers", s.unvalued_transfers},
    };
}

}  // namespace ets::ingest

namespace ets {

void to_json(nlohmann::json& j, const WeeklyPriceSeries& s) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : s.points) {
        points.push_back({{"week", p.week.str()}, {"mean_price", p.mean_price}, {"n_obs", p.n_obs}});
    }
    j = nlohmann::json{{"points", points}};
}

void to_json(nlohmann::json& j, const ReturnSeries& s) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : s.points) {
        points.push_back({{"week", p.week.str()}, {"log_return", p.r}});
    }
    j = nlohmann::json{{"points", points}};
}

}  // namespace ets

namespace ets::forecast {

void to_json(nlohmann::json& j, const ForecastMetrics& m) {
    j = nlohmann::json{
        {"mse", m.mse},
        {"rmse", m.rmse},
        {"mae", m.mae},
        {"directional_accuracy", m.directional_accuracy},
        {"hit_rate", m.hit_rate},
        {"steps", m.steps},
    };
}

void to_json(nlohmann::json& j, const RollingForecastResult& r) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : r.steps) {
        steps.push_back({
            {"week", s.week.str()},
            {"forecast_mean", s.forecast_mean},
            {"forecast_variance", s.forecast_variance},
            {"actual", s.actual},
            {"garch_fallback", s.garch_fallback},
        });
    }
    j = nlohmann::json{
        {"window", r.window},
        {"ar_order", r.ar_order},
        {"fallback_steps", r.fallback_count()},
        {"steps", steps},
    };
}

}  // namespace ets::forecast

namespace ets::network {

void to_json(nlohmann::json& j, const CentralityTimeseries& t) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : t.cells) {
        cells.push_back({
            {"year", c.year},
            {"registry", c.registry.str()},
            {"proportion", c.proportion},
        });
    }
    j = nlohmann::json{{"cells", cells}, {"errors", t.errors}};
}

void to_json(nlohmann::json& j, const CentralityResult& r) {
    j = nlohmann::json{
        {"x", std::vector<double>(r.x.data(), r.x.data() + r.x.size())},
        {"lambda", r.lambda},
        {"proportions",
         std::vector<double>(r.proportions.data(), r.proportions.data() + r.proportions.size())},
        {"iterations", r.iterations},
        {"converged", r.converged},
        {"damping", r.damping},
    };
}

}  // namespace ets::network

namespace ets::elasticity {

void to_json(nlohmann::json& j, const ElasticityEstimate& e) {
    j = nlohmann::json{
        {"from", e.from.str()},
        {"to", e.to.str()},
        {"period", e.period},
        {"method", std::string(to_string(e.method))},
        {"n", e.n},
        {"valid", e.valid},
    };
    if (e.valid) {
        j["beta0"] = e.beta0;
        j["p0"] = e.p0;
        j["beta1"] = e.beta1;
        j["p1"] = e.p1;
        j["significant"] = e.significant;
        j["stars"] = significance_stars(e.p1);
    } else {
        j["skip_reason"] = e.skip_reason;
    }
}

void to_json(nlohmann::json& j, const ElasticityReport& r) {
    j = nlohmann::json{{"rows", r.rows}};
}

}  // namespace ets::elasticity
