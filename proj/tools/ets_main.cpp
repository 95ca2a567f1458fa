// Command-line front end: subcommands per analysis stage, JSON config
// with flag overrides, deterministic artifacts plus a run manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "ets/csv.hpp"
#include "ets/elasticity.hpp"
#include "ets/errors.hpp"
#include "ets/format.hpp"
#include "ets/hypothesis.hpp"
#include "ets/ingest.hpp"
#include "ets/json_io.hpp"
#include "ets/network.hpp"
#include "ets/rolling.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
    std::string transactions;
    std::string prices;
    std::string output_dir = "out";
    std::string config_path;
    std::uint64_t seed = 42;
    bool strict = false;
    std::string output_format = "both";  // csv | json | both

    // ingest / filtering
    int max_gap_days = 7;
    bool cross_class_only = false;
    std::map<std::string, std::string> schema_rename;  // config-file only

    // stationarity tests
    std::string adf_spec = "constant";  // none | constant | trend
    int adf_max_lag = -1;               // <0: Schwert default
    int adf_fixed_lag = -1;             // <0: AIC selection
    int arch_lags = 5;
    double alpha = 0.05;

    // forecast
    int window = 104;
    int ar_order = 3;

    // network / centrality
    std::vector<int> years;
    double edge_threshold = 0.0;
    double node_threshold = 0.0;
    std::string aggregation = "mean";  // mean | sum
    bool transpose = false;
    double damping = 0.0;
    int from_year = 0;
    int to_year = 0;

    // elasticity
    std::string registries = "FR,DE,GB";
    std::string breakpoints = "2013-01-01,2018-01-01";
    std::string method = "both";  // ols | lad | both
    int bootstrap_reps = 999;
    int min_n = 30;
    double significance = 0.05;

    [[nodiscard]] bool write_csv() const { return output_format != "json"; }
    [[nodiscard]] bool write_json() const { return output_format != "csv"; }

    // The recorded config omits output_dir and config_path: they identify
    // where a run landed, not what it computed, and runs into different
    // directories must stay byte-comparable.
    [[nodiscard]] json to_json_object() const {
        return json{{"transactions", transactions},
                    {"prices", prices},
                    {"seed", seed},
                    {"strict", strict},
                    {"output_format", output_format},
                    {"max_gap_days", max_gap_days},
                    {"cross_class_only", cross_class_only},
                    {"adf_spec", adf_spec},
                    {"adf_max_lag", adf_max_lag},
                    {"adf_fixed_lag", adf_fixed_lag},
                    {"arch_lags", arch_lags},
                    {"alpha", alpha},
                    {"window", window},
                    {"ar_order", ar_order},
                    {"years", years},
                    {"edge_threshold", edge_threshold},
                    {"node_threshold", node_threshold},
                    {"aggregation", aggregation},
                    {"transpose", transpose},
                    {"damping", damping},
                    {"from_year", from_year},
                    {"to_year", to_year},
                    {"registries", registries},
                    {"breakpoints", breakpoints},
                    {"method", method},
                    {"bootstrap_reps", bootstrap_reps},
                    {"min_n", min_n},
                    {"significance", significance},
                    {"schema", schema_rename}};
    }
};

/// Writer that records every artifact for the manifest.
class OutputDir {
public:
    OutputDir(fs::path dir, const RunConfig& config, std::string command)
        : dir_(std::move(dir)), config_(config), command_(std::move(command)) {
        fs::create_directories(dir_);
    }

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw ets::DataError("cannot write " + (dir_ / name).string());
        out << content;
        artifacts_.insert(name);
    }

    void write_json_file(const std::string& name, const json& j) {
        write(name, j.dump(2) + "\n");
    }

    void finish() {
        json inputs = json::array();
        for (const std::string& path : {config_.transactions, config_.prices}) {
            if (path.empty()) continue;
            std::ifstream in(path, std::ios::binary);
            std::stringstream buf;
            buf << in.rdbuf();
            inputs.push_back({{"path", path}, {"fnv1a64", ets::fnv1a64_hex(buf.str())}});
        }
        const json cfg = config_.to_json_object();
        artifacts_.insert("manifest.json");  // the manifest lists itself
        json manifest{
            {"command", command_},
            {"config", cfg},
            {"config_hash", ets::fnv1a64_hex(cfg.dump())},
            {"inputs", inputs},
            {"seed", config_.seed},
            {"artifacts", std::vector<std::string>(artifacts_.begin(), artifacts_.end())},
            {"generated_at", timestamp()},
        };
        write_json_file("manifest.json", manifest);
    }

private:
    static std::string timestamp() {
        const auto now = std::chrono::system_clock::now();
        const std::time_t t = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
        return buf;
    }

    fs::path dir_;
    const RunConfig& config_;
    std::string command_;
    std::set<std::string> artifacts_;
};

ets::ingest::ParseMode parse_mode(const RunConfig& c) {
    return c.strict ? ets::ingest::ParseMode::Strict : ets::ingest::ParseMode::Lenient;
}

ets::network::Aggregation aggregation_of(const RunConfig& c) {
    if (c.aggregation == "mean") return ets::network::Aggregation::Mean;
    if (c.aggregation == "sum") return ets::network::Aggregation::Sum;
    throw ets::UsageError("unknown aggregation '" + c.aggregation + "'");
}

std::vector<ets::RegistryCode> parse_registries(const std::string& csv) {
    std::vector<ets::RegistryCode> out;
    for (const std::string& field : ets::split_csv_line(csv)) {
        out.push_back(ets::RegistryCode::parse(field));
    }
    if (out.empty()) throw ets::UsageError("empty registry list");
    return out;
}

ets::PeriodSegmentation parse_segmentation(const RunConfig& c) {
    std::vector<ets::Date> breaks;
    if (!c.breakpoints.empty()) {
        for (const std::string& field : ets::split_csv_line(c.breakpoints)) {
            breaks.push_back(ets::Date::parse(field));
        }
    }
    const ets::PeriodSegmentation standard = ets::PeriodSegmentation::standard();
    if (breaks == standard.breakpoints()) return standard;
    return ets::PeriodSegmentation::make(ets::kStudyWindowStart, std::move(breaks),
                                         ets::kStudyWindowEnd);
}

struct LoadedData {
    ets::ingest::Dataset dataset;  // filtered and enriched
    ets::ingest::ParseReport tx_report;
    ets::ingest::ParseReport price_report;
    ets::ingest::EnrichStats enrich_stats;
};

void require_inputs(const RunConfig& c, bool need_transactions) {
    if (c.prices.empty()) throw ets::UsageError("--prices is required");
    if (!fs::exists(c.prices)) throw ets::DataError("prices file not found: " + c.prices);
    if (need_transactions) {
        if (c.transactions.empty()) throw ets::UsageError("--transactions is required");
        if (!fs::exists(c.transactions)) {
            throw ets::DataError("transactions file not found: " + c.transactions);
        }
    }
}

ets::ingest::CsvSchema schema_of(const RunConfig& c) {
    ets::ingest::CsvSchema schema;
    schema.rename = c.schema_rename;
    return schema;
}

LoadedData load_all(const RunConfig& c) {
    LoadedData data;
    ets::ingest::FilterOptions filter;
    filter.cross_class_only = c.cross_class_only;
    ets::ingest::EnrichOptions enrich;
    enrich.max_gap_days = c.max_gap_days;
    data.dataset = ets::ingest::load_dataset(c.transactions, c.prices, parse_mode(c),
                                             data.tx_report, data.price_report, schema_of(c));
    data.dataset = ets::ingest::filter_compliance_flows(std::move(data.dataset), filter);
    data.dataset = ets::ingest::enrich_values(std::move(data.dataset), enrich,
                                              &data.enrich_stats);
    return data;
}

std::vector<ets::PriceObservation> load_prices_only(const RunConfig& c,
                                                    ets::ingest::ParseReport& report) {
    return ets::ingest::parse_prices(c.prices, parse_mode(c), report, schema_of(c));
}

// --- artifact serializers -------------------------------------------------

std::string weekly_csv(const ets::WeeklyPriceSeries& s) {
    std::string out = "iso_week,mean_price,n_obs\n";
    for (const auto& p : s.points) {
        out += p.week.str() + "," + ets::format_double(p.mean_price) + "," +
               std::to_string(p.n_obs) + "\n";
    }
    return out;
}

std::string returns_csv(const ets::ReturnSeries& s) {
    std::string out = "iso_week,log_return\n";
    for (const auto& p : s.points) {
        out += p.week.str() + "," + ets::format_double(p.r) + "\n";
    }
    return out;
}

std::string forecast_csv(const ets::forecast::RollingForecastResult& r) {
    std::string out = "week,forecast_mean,forecast_variance,actual,band_lo,band_hi,flagged\n";
    for (const auto& s : r.steps) {
        const double sd = std::sqrt(s.forecast_variance);
        out += s.week.str() + "," + ets::format_double(s.forecast_mean) + "," +
               ets::format_double(s.forecast_variance) + "," + ets::format_double(s.actual) +
               "," + ets::format_double(s.forecast_mean - sd) + "," +
               ets::format_double(s.forecast_mean + sd) + "," +
               (s.garch_fallback ? "1" : "0") + "\n";
    }
    return out;
}

std::string network_csv(const ets::network::TradeNetwork& net) {
    std::string out = "from,to,value_eur\n";
    const auto n = static_cast<Eigen::Index>(net.nodes.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const double w = net.weights(i, j);
            if (w <= 0.0) continue;
            out += net.nodes[static_cast<std::size_t>(i)].str() + "," +
                   net.nodes[static_cast<std::size_t>(j)].str() + "," +
                   ets::format_double(w) + "\n";
        }
    }
    return out;
}

std::string centrality_csv(const ets::network::CentralityTimeseries& ts) {
    std::string out = "year,registry,proportion\n";
    for (const auto& c : ts.cells) {
        out += std::to_string(c.year) + "," + c.registry.str() + "," +
               ets::format_double(c.proportion) + "\n";
    }
    return out;
}

std::string flow_summary_csv(const ets::ingest::FlowSummary& s) {
    std::string out = "from_class,to_class,count,count_share,value_eur,value_share\n";
    for (const auto& p : s.pairs) {
        out += std::string(to_string(p.from)) + "," + std::string(to_string(p.to)) + "," +
               std::to_string(p.count) + "," + ets::format_double(p.count_share) + "," +
               ets::format_double(p.value_eur) + "," + ets::format_double(p.value_share) + "\n";
    }
    return out;
}

std::string registry_activity_csv(const ets::ingest::FlowSummary& s) {
    std::string out = "registry,transfers_out,transfers_in,value_out,value_in\n";
    for (const auto& r : s.registries) {
        out += r.registry.str() + "," + std::to_string(r.transfers_out) + "," +
               std::to_string(r.transfers_in) + "," + ets::format_double(r.value_out) + "," +
               ets::format_double(r.value_in) + "\n";
    }
    return out;
}

std::string elasticity_csv(const ets::elasticity::ElasticityReport& report) {
    std::string out = "from,to,period,method,beta0,p0,beta1,p1,stars,n,significant,skip_reason\n";
    for (const auto& e : report.rows) {
        out += e.from.str() + "," + e.to.str() + "," + ets::csv_quote(e.period) + "," +
               std::string(to_string(e.method)) + ",";
        if (e.valid) {
            out += ets::format_double(e.beta0) + "," + ets::format_double(e.p0) + "," +
                   ets::format_double(e.beta1) + "," + ets::format_double(e.p1) + "," +
                   ets::elasticity::significance_stars(e.p1) + "," + std::to_string(e.n) + "," +
                   (e.significant ? "1" : "0") + ",";
        } else {
            out += ",,,,," + std::to_string(e.n) + ",0," + ets::csv_quote(e.skip_reason);
        }
        out += "\n";
    }
    return out;
}

// --- stage runners ---------------------------------------------------------

void stage_ingest(const RunConfig& c, OutputDir& out) {
    LoadedData data = load_all(c);
    const auto weekly = ets::ingest::aggregate_weekly(data.dataset.prices);
    const auto returns = ets::ingest::log_returns(weekly);

    if (c.write_csv()) {
        out.write("weekly_prices.csv", weekly_csv(weekly));
        out.write("returns.csv", returns_csv(returns));
    }
    if (c.write_json()) {
        out.write_json_file("weekly_prices.json", weekly);
        out.write_json_file("returns.json", returns);
    }
    out.write_json_file("ingest_report.json",
                        json{{"transactions", data.tx_report},
                             {"prices", data.price_report},
                             {"transfers_after_filter", data.dataset.transfers.size()},
                             {"valued_transfers", data.enrich_stats.valued},
                             {"unvalued_transfers", data.enrich_stats.unvalued}});
}

void stage_summary(const RunConfig& c, OutputDir& out) {
    LoadedData data = load_all(c);
    const auto summary = ets::ingest::summarize_flows(data.dataset);
    if (c.write_csv()) {
        out.write("flow_summary.csv", flow_summary_csv(summary));
        out.write("registry_activity.csv", registry_activity_csv(summary));
    }
    if (c.write_json()) out.write_json_file("flow_summary.json", summary);
}

void stage_test(const RunConfig& c, OutputDir& out) {
    ets::ingest::ParseReport price_report;
    const auto prices = load_prices_only(c, price_report);
    const auto weekly = ets::ingest::aggregate_weekly(prices);
    const auto returns = ets::ingest::log_returns(weekly);
    const std::vector<double> r = returns.values();

    ets::stats::AdfOptions adf;
    adf.alpha = c.alpha;
    if (c.adf_spec == "none") adf.spec = ets::stats::AdfSpec::NoConstant;
    else if (c.adf_spec == "constant") adf.spec = ets::stats::AdfSpec::Constant;
    else if (c.adf_spec == "trend") adf.spec = ets::stats::AdfSpec::ConstantTrend;
    else throw ets::UsageError("unknown adf spec '" + c.adf_spec + "'");
    if (c.adf_max_lag >= 0) adf.max_lag = c.adf_max_lag;
    if (c.adf_fixed_lag >= 0) adf.fixed_lag = c.adf_fixed_lag;

    const auto adf_result = ets::stats::adf_test(r, adf);
    const auto arch_result = ets::stats::arch_lm_test(r, c.arch_lags, c.alpha);

    out.write_json_file("stationarity_tests.json",
                        json{{"adf", adf_result}, {"arch_lm", arch_result}});

    auto conclusion = [](const ets::stats::TestResult& t, const char* reject,
                         const char* keep) {
        return t.conclusion == ets::stats::TestConclusion::RejectH0 ? reject : keep;
    };
    std::ostringstream table;
    table << "Test          Statistic    p-value      Conclusion\n";
    table << "ADF           " << ets::format_fixed(adf_result.statistic, 3) << "       "
          << ets::format_double(adf_result.p_value, 3) << "     "
          << conclusion(adf_result, "Stationary in mean (reject H0)",
                        "Unit root not rejected")
          << "\n";
    table << "Engle's test  " << ets::format_fixed(arch_result.statistic, 3) << "       "
          << ets::format_double(arch_result.p_value, 3) << "     "
          << conclusion(arch_result, "ARCH effects present (reject H0)",
                        "No ARCH effects detected")
          << "\n";
    std::cout << table.str();
}

void stage_forecast(const RunConfig& c, OutputDir& out) {
    ets::ingest::ParseReport price_report;
    const auto prices = load_prices_only(c, price_report);
    const auto weekly = ets::ingest::aggregate_weekly(prices);
    const auto returns = ets::ingest::log_returns(weekly);

    const auto result = ets::forecast::rolling_forecast(returns, c.window, c.ar_order);
    const auto metrics = ets::forecast::evaluate(result);

    if (c.write_csv()) out.write("forecast_steps.csv", forecast_csv(result));
    if (c.write_json()) out.write_json_file("forecast_steps.json", result);
    out.write_json_file("forecast_metrics.json", metrics);
}

std::vector<int> years_in(const ets::ingest::Dataset& ds) {
    std::set<int> years;
    for (const auto& t : ds.transfers) {
        if (t.value_eur) years.insert(t.date.year);
    }
    return {years.begin(), years.end()};
}

void stage_network(const RunConfig& c, OutputDir& out) {
    LoadedData data = load_all(c);
    std::vector<int> years = c.years;
    if (years.empty()) years = years_in(data.dataset);
    if (years.empty()) throw ets::DataError("no valued transfers in any year");
    for (int year : years) {
        const auto net = ets::network::build_annual_network(data.dataset, year,
                                                            aggregation_of(c));
        if (c.write_csv()) {
            out.write("network_" + std::to_string(year) + ".csv", network_csv(net));
        }
        out.write("network_" + std::to_string(year) + ".dot",
                  ets::network::export_network(net, c.edge_threshold, c.node_threshold));
    }
}

void stage_centrality(const RunConfig& c, OutputDir& out) {
    LoadedData data = load_all(c);
    int from = c.from_year, to = c.to_year;
    if (from <= 0 || to <= 0) {
        const auto years = years_in(data.dataset);
        if (years.empty()) throw ets::DataError("no valued transfers in any year");
        if (from <= 0) from = years.front();
        if (to <= 0) to = years.back();
    }
    ets::network::CentralityOptions options;
    options.transpose = c.transpose;
    options.damping = c.damping;
    const auto ts = ets::network::centrality_timeseries(data.dataset, from, to,
                                                        aggregation_of(c), options);
    for (const auto& err : ts.errors) {
        std::cerr << "centrality: " << err << "\n";
    }
    if (c.write_csv()) out.write("centrality.csv", centrality_csv(ts));
    if (c.write_json()) out.write_json_file("centrality.json", ts);
}

void stage_elasticity(const RunConfig& c, OutputDir& out) {
    LoadedData data = load_all(c);
    const auto seg = parse_segmentation(c);
    ets::elasticity::ElasticityOptions options;
    options.registries = parse_registries(c.registries);
    options.min_n = c.min_n;
    options.significance = c.significance;
    options.bootstrap_reps = c.bootstrap_reps;
    options.seed = c.seed;
    options.price_max_gap_days = c.max_gap_days;

    auto report = ets::elasticity::elasticity_report(data.dataset, seg, options);
    if (c.method == "ols" || c.method == "lad") {
        const auto keep = c.method == "ols" ? ets::elasticity::FitMethod::Ols
                                            : ets::elasticity::FitMethod::Lad;
        std::erase_if(report.rows,
                      [&](const ets::elasticity::ElasticityEstimate& e) { return e.method != keep; });
    } else if (c.method != "both") {
        throw ets::UsageError("unknown method '" + c.method + "'");
    }

    if (c.write_csv()) out.write("elasticity.csv", elasticity_csv(report));
    if (c.write_json()) out.write_json_file("elasticity.json", report);

    const auto graph_method = c.method == "lad" ? ets::elasticity::FitMethod::Lad
                                                : ets::elasticity::FitMethod::Ols;
    for (const auto& period : seg.labels()) {
        out.write("elasticity_" + ets::elasticity::sanitize_label(period) + ".dot",
                  ets::elasticity::elasticity_graph(report.rows, period, graph_method));
    }
}

int run_command(const std::string& command, const RunConfig& config) {
    const bool needs_tx = command != "test" && command != "forecast";
    require_inputs(config, needs_tx);

    OutputDir out(config.output_dir, config, command);
    if (command == "ingest") stage_ingest(config, out);
    else if (command == "summary") stage_summary(config, out);
    else if (command == "test") stage_test(config, out);
    else if (command == "forecast") stage_forecast(config, out);
    else if (command == "network") stage_network(config, out);
    else if (command == "centrality") stage_centrality(config, out);
    else if (command == "elasticity") stage_elasticity(config, out);
    else if (command == "all") {
        stage_ingest(config, out);
        stage_summary(config, out);
        stage_test(config, out);
        stage_forecast(config, out);
        stage_network(config, out);
        stage_centrality(config, out);
        stage_elasticity(config, out);
    } else {
        throw ets::UsageError("unknown command '" + command + "'");
    }
    out.finish();
    return 0;
}

std::size_t flag_count(CLI::App& app, const std::string& flag) {
    std::size_t total = 0;
    if (const CLI::Option* o = app.get_option_no_throw(flag)) total += o->count();
    for (CLI::App* sub : app.get_subcommands()) {
        if (const CLI::Option* o = sub->get_option_no_throw(flag)) total += o->count();
    }
    return total;
}

void apply_config_file(CLI::App& app, RunConfig& config) {
    if (config.config_path.empty()) return;
    std::ifstream in(config.config_path);
    if (!in) throw ets::UsageError("cannot read config file: " + config.config_path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw ets::UsageError(std::string("config file is not valid JSON: ") + e.what());
    }

    // Config keys mirror flag names without the leading dashes.
    // Command-line flags win over config file values.
    auto use = [&](const char* flag) {
        return flag_count(app, flag) == 0 && cfg.contains(flag + 2);
    };
    auto str = [&](const char* flag, std::string& v) { if (use(flag)) v = cfg.at(flag + 2).get<std::string>(); };
    auto num = [&](const char* flag, auto& v) {
        if (use(flag)) v = cfg.at(flag + 2).get<std::decay_t<decltype(v)>>();
    };
    str("--transactions", config.transactions);
    str("--prices", config.prices);
    str("--output-dir", config.output_dir);
    num("--seed", config.seed);
    num("--strict", config.strict);
    str("--output-format", config.output_format);
    num("--max-gap-days", config.max_gap_days);
    num("--cross-class-only", config.cross_class_only);
    str("--adf-spec", config.adf_spec);
    num("--adf-max-lag", config.adf_max_lag);
    num("--adf-lag", config.adf_fixed_lag);
    num("--arch-lags", config.arch_lags);
    num("--alpha", config.alpha);
    num("--window", config.window);
    num("--ar-order", config.ar_order);
    num("--edge-threshold", config.edge_threshold);
    num("--node-threshold", config.node_threshold);
    str("--aggregation", config.aggregation);
    num("--transpose", config.transpose);
    num("--damping", config.damping);
    num("--from-year", config.from_year);
    num("--to-year", config.to_year);
    str("--registries", config.registries);
    str("--breakpoints", config.breakpoints);
    str("--method", config.method);
    num("--bootstrap-reps", config.bootstrap_reps);
    num("--min-n", config.min_n);
    num("--significance", config.significance);
    if (use("--years")) config.years = cfg.at("years").get<std::vector<int>>();
    if (cfg.contains("schema")) {
        config.schema_rename =
            cfg.at("schema").get<std::map<std::string, std::string>>();
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig config;
    CLI::App app{"EU allowance market analytics: returns, forecasts, trade networks, "
                 "price elasticities"};
    app.fallthrough();
    app.set_version_flag("--version", std::string("ets ") + kVersion);
    app.require_subcommand(1);

    app.add_option("--config", config.config_path, "JSON config file (flags override it)");
    app.add_option("--transactions", config.transactions, "Transactions CSV");
    app.add_option("--prices", config.prices, "Prices CSV");
    app.add_option("--output-dir", config.output_dir, "Artifact directory");
    app.add_option("--seed", config.seed, "Random seed for bootstrap resampling");
    app.add_flag("--strict", config.strict, "Abort on the first malformed row");
    app.add_option("--output-format", config.output_format, "csv, json, or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    app.add_option("--max-gap-days", config.max_gap_days,
                   "Longest price forward-fill gap (days)");
    app.add_flag("--cross-class-only", config.cross_class_only,
                 "Keep only OHA->PHA / PHA->OHA transfers");

    app.add_subcommand("ingest", "Parse, filter, enrich; weekly series");
    app.add_subcommand("summary", "Flow shares by account-class pair");
    CLI::App* cmd_test = app.add_subcommand("test", "ADF and ARCH-LM on weekly returns");
    cmd_test->add_option("--adf-spec", config.adf_spec, "none, constant, or trend")
        ->check(CLI::IsMember({"none", "constant", "trend"}));
    cmd_test->add_option("--adf-max-lag", config.adf_max_lag, "AIC search bound");
    cmd_test->add_option("--adf-lag", config.adf_fixed_lag, "Fixed lag (skips AIC)");
    cmd_test->add_option("--arch-lags", config.arch_lags, "ARCH-LM lag count");
    cmd_test->add_option("--alpha", config.alpha, "Significance level");

    CLI::App* cmd_forecast = app.add_subcommand("forecast", "Rolling AR+GARCH backtest");
    cmd_forecast->add_option("--window", config.window, "Rolling window length (weeks)");
    cmd_forecast->add_option("--ar-order", config.ar_order, "AR order");

    CLI::App* cmd_network = app.add_subcommand("network", "Annual trade networks and DOT export");
    cmd_network->add_option("--year", config.years, "Year(s); default: every year present");
    cmd_network->add_option("--edge-threshold", config.edge_threshold, "Minimum edge EUR value");
    cmd_network->add_option("--node-threshold", config.node_threshold,
                            "Self-trade EUR value where node scaling starts");
    cmd_network->add_option("--aggregation", config.aggregation, "mean or sum")
        ->check(CLI::IsMember({"mean", "sum"}));

    CLI::App* cmd_centrality = app.add_subcommand("centrality", "Eigenvector centrality by year");
    cmd_centrality->add_option("--from-year", config.from_year, "First year");
    cmd_centrality->add_option("--to-year", config.to_year, "Last year");
    cmd_centrality->add_option("--aggregation", config.aggregation, "mean or sum")
        ->check(CLI::IsMember({"mean", "sum"}));
    cmd_centrality->add_flag("--transpose", config.transpose, "In-link variant");
    cmd_centrality->add_option("--damping", config.damping, "Uniform damping epsilon");

    CLI::App* cmd_elasticity = app.add_subcommand("elasticity", "Log-log OLS/LAD elasticities");
    cmd_elasticity->add_option("--registries", config.registries, "Comma-separated codes");
    cmd_elasticity->add_option("--breakpoints", config.breakpoints,
                               "Comma-separated period breakpoints (YYYY-MM-DD)");
    cmd_elasticity->add_option("--method", config.method, "ols, lad, or both")
        ->check(CLI::IsMember({"ols", "lad", "both"}));
    cmd_elasticity->add_option("--bootstrap-reps", config.bootstrap_reps, "LAD bootstrap reps");
    cmd_elasticity->add_option("--min-n", config.min_n, "Minimum observations per cell");
    cmd_elasticity->add_option("--significance", config.significance,
                               "Edge inclusion threshold");

    // `all` accepts every stage flag, bound to the same targets.
    CLI::App* cmd_all = app.add_subcommand("all", "Run every stage in dependency order");
    cmd_all->add_option("--adf-spec", config.adf_spec)->check(CLI::IsMember({"none", "constant", "trend"}));
    cmd_all->add_option("--adf-max-lag", config.adf_max_lag);
    cmd_all->add_option("--adf-lag", config.adf_fixed_lag);
    cmd_all->add_option("--arch-lags", config.arch_lags);
    cmd_all->add_option("--alpha", config.alpha);
    cmd_all->add_option("--window", config.window);
    cmd_all->add_option("--ar-order", config.ar_order);
    cmd_all->add_option("--year", config.years);
    cmd_all->add_option("--edge-threshold", config.edge_threshold);
    cmd_all->add_option("--node-threshold", config.node_threshold);
    cmd_all->add_option("--aggregation", config.aggregation)->check(CLI::IsMember({"mean", "sum"}));
    cmd_all->add_flag("--transpose", config.transpose);
    cmd_all->add_option("--damping", config.damping);
    cmd_all->add_option("--from-year", config.from_year);
    cmd_all->add_option("--to-year", config.to_year);
    cmd_all->add_option("--registries", config.registries);
    cmd_all->add_option("--breakpoints", config.breakpoints);
    cmd_all->add_option("--method", config.method)->check(CLI::IsMember({"ols", "lad", "both"}));
    cmd_all->add_option("--bootstrap-reps", config.bootstrap_reps);
    cmd_all->add_option("--min-n", config.min_n);
    cmd_all->add_option("--significance", config.significance);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors -> 1; --help/--version -> 0
    }

    try {
        apply_config_file(app, config);
        const std::string command = app.get_subcommands().front()->get_name();
        return run_command(command, config);
    } catch (const ets::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ets::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const ets::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected failure: " << e.what() << "\n";
        return 3;
    }
}
