#include "ets/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>

#include "ets/csv.hpp"
#include "ets/errors.hpp"

namespace ets::ingest {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& detail) {
    throw DataError("schema mismatch in " + path + ": " + detail);
}

// Maps canonical column names to their positions in the header row.
std::vector<std::size_t> resolve_header(const std::vector<std::string>& header,
                                        const std::vector<std::string>& canonical,
                                        const CsvSchema& schema, const std::string& path) {
    std::vector<std::size_t> positions;
    positions.reserve(canonical.size());
    for (const std::string& name : canonical) {
        const std::string wanted = schema.resolve(name);
        auto it = std::find(header.begin(), header.end(), wanted);
        if (it == header.end()) schema_error(path, "missing column '" + wanted + "'");
        positions.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    return positions;
}

std::int64_t parse_int(const std::string& text) {
    std::int64_t v = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) throw DataError("invalid integer '" + text + "'");
    return v;
}

double parse_decimal(const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) throw DataError("invalid number '" + text + "'");
    return v;
}

template <typename RowFn>
void parse_rows(const std::string& path, ParseMode mode, ParseReport& report,
                const std::vector<std::string>& canonical, const CsvSchema& schema,
                RowFn&& handle_row) {
    report.path = path;
    CsvReader reader(path);
    std::vector<std::string> fields;
    if (!reader.next(fields)) schema_error(path, "empty file");
    const std::vector<std::size_t> cols = resolve_header(fields, canonical, schema, path);

    while (reader.next(fields)) {
        ++report.total_rows;
        try {
            for (std::size_t pos : cols) {
                if (pos >= fields.size()) throw DataError("short row");
            }
            handle_row(fields, cols);
            ++report.accepted;
        } catch (const DataError& e) {
            if (mode == ParseMode::Strict) {
                throw DataError(path + ":" + std::to_string(reader.row_number()) + ": " +
                                e.what());
            }
            report.issues.push_back({reader.row_number(), e.what()});
        }
    }
}

}  // namespace

std::vector<TransferRecord> parse_transactions(const std::string& path, ParseMode mode,
                                               ParseReport& report, const CsvSchema& schema) {
    static const std::vector<std::string> canonical = {
        "id", "date", "from_registry", "to_registry", "from_class", "to_class", "quantity"};
    std::vector<TransferRecord> records;
    parse_rows(path, mode, report, canonical, schema,
               [&](const std::vector<std::string>& f, const std::vector<std::size_t>& c) {
                   TransferRecord r;
                   r.id = f[c[0]];
                   if (r.id.empty()) throw DataError("empty transfer id");
                   r.date = Date::parse(f[c[1]]);
                   r.from_registry = RegistryCode::parse(f[c[2]]);
                   r.to_registry = RegistryCode::parse(f[c[3]]);
                   r.from_class = parse_account_class(f[c[4]]);
                   r.to_class = parse_account_class(f[c[5]]);
                   r.quantity = parse_int(f[c[6]]);
                   if (r.quantity <= 0) {
                       throw DataError("quantity must be positive, got " + f[c[6]]);
                   }
                   records.push_back(std::move(r));
               });
    return records;
}

std::vector<PriceObservation> parse_prices(const std::string& path, ParseMode mode,
                                           ParseReport& report, const CsvSchema& schema) {
    static const std::vector<std::string> canonical = {"date", "market", "price"};
    std::vector<PriceObservation> prices;
    parse_rows(path, mode, report, canonical, schema,
               [&](const std::vector<std::string>& f, const std::vector<std::size_t>& c) {
                   PriceObservation p;
                   p.date = Date::parse(f[c[0]]);
                   p.market = parse_market(f[c[1]]);
                   p.price = parse_decimal(f[c[2]]);
                   if (!(p.price > 0.0)) {
                       throw DataError("price must be positive, got " + f[c[2]]);
                   }
                   prices.push_back(p);
               });
    return prices;
}

Dataset load_dataset(const std::string& transactions_path, const std::string& prices_path,
                     ParseMode mode, ParseReport& tx_report, ParseReport& price_report,
                     const CsvSchema& schema) {
    Dataset ds;
    ds.transfers = parse_transactions(transactions_path, mode, tx_report, schema);
    ds.prices = parse_prices(prices_path, mode, price_report, schema);

    std::stable_sort(ds.transfers.begin(), ds.transfers.end(),
                     [](const TransferRecord& a, const TransferRecord& b) {
                         if (a.date != b.date) return a.date < b.date;
                         return a.id < b.id;
                     });
    std::stable_sort(ds.prices.begin(), ds.prices.end(),
                     [](const PriceObservation& a, const PriceObservation& b) {
                         if (a.date != b.date) return a.date < b.date;
                         return a.market < b.market;
                     });

    std::unordered_set<std::string> seen;
    std::vector<TransferRecord> unique;
    unique.reserve(ds.transfers.size());
    for (auto& t : ds.transfers) {
        if (!seen.insert(t.id).second) {
            if (mode == ParseMode::Strict) {
                throw DataError("duplicate transfer id '" + t.id + "'");
            }
            tx_report.issues.push_back({0, "duplicate transfer id '" + t.id + "' dropped"});
            continue;
        }
        unique.push_back(std::move(t));
    }
    tx_report.accepted -= ds.transfers.size() - unique.size();
    ds.transfers = std::move(unique);

    ds.provenance.transactions_path = transactions_path;
    ds.provenance.prices_path = prices_path;
    ds.provenance.transaction_rows = ds.transfers.size();
    ds.provenance.price_rows = ds.prices.size();
    return ds;
}

Dataset filter_compliance_flows(Dataset ds, const FilterOptions& options) {
    auto keep = [&](const TransferRecord& t) {
        if (t.from_class == AccountClass::ADMIN || t.to_class == AccountClass::ADMIN) return false;
        if (options.cross_class_only && t.from_class == t.to_class) return false;
        return !(t.date < options.window_start) && !(options.window_end < t.date);
    };
    std::erase_if(ds.transfers, [&](const TransferRecord& t) { return !keep(t); });
    ds.provenance.transaction_rows = ds.transfers.size();
    return ds;
}

SecondaryPriceIndex::SecondaryPriceIndex(std::span<const PriceObservation> prices) {
    for (const auto& p : prices) {
        if (p.market == Market::Secondary) by_serial_.emplace_back(p.date.serial(), p.price);
    }
    std::stable_sort(by_serial_.begin(), by_serial_.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    // One price per day: keep the last quote of a day if duplicated.
    std::vector<std::pair<std::int64_t, double>> dedup;
    for (const auto& e : by_serial_) {
        if (!dedup.empty() && dedup.back().first == e.first) {
            dedup.back().second = e.second;
        } else {
            dedup.push_back(e);
        }
    }
    by_serial_ = std::move(dedup);
}

double SecondaryPriceIndex::lookup(const Date& d, int max_gap_days) const {
    const std::int64_t target = d.serial();
    auto it = std::upper_bound(by_serial_.begin(), by_serial_.end(), target,
                               [](std::int64_t v, const auto& e) { return v < e.first; });
    if (it == by_serial_.begin()) return std::numeric_limits<double>::quiet_NaN();
    --it;
    if (target - it->first > max_gap_days) return std::numeric_limits<double>::quiet_NaN();
    return it->second;
}

Dataset enrich_values(Dataset ds, const EnrichOptions& options, EnrichStats* stats) {
    const SecondaryPriceIndex index(ds.prices);
    EnrichStats local;
    for (auto& t : ds.transfers) {
        const double price = index.lookup(t.date, options.max_gap_days);
        if (std::isnan(price)) {
            t.value_eur.reset();
            ++local.unvalued;
        } else {
            t.value_eur = static_cast<double>(t.quantity) * price;
            ++local.valued;
        }
    }
    if (stats != nullptr) *stats = local;
    return ds;
}

WeeklyPriceSeries aggregate_weekly(std::span<const PriceObservation> prices) {
    std::map<IsoWeek, std::pair<double, int>> buckets;  // week -> (sum, count)
    for (const auto& p : prices) {
        if (p.market != Market::Secondary) continue;
        auto& [sum, count] = buckets[iso_week_of(p.date)];
        sum += p.price;
        ++count;
    }
    if (buckets.size() < 2) {
        throw InsufficientDataError("aggregate_weekly: need secondary prices in at least 2 "
                                    "distinct weeks, got " +
                                    std::to_string(buckets.size()));
    }
    WeeklyPriceSeries series;
    series.points.reserve(buckets.size());
    for (const auto& [week, agg] : buckets) {
        series.points.push_back({week, agg.first / agg.second, agg.second});
    }
    return series;
}

ReturnSeries log_returns(const WeeklyPriceSeries& weekly) {
    if (weekly.points.size() < 2) {
        throw InsufficientDataError("log_returns: need at least 2 weekly points");
    }
    ReturnSeries rs;
    rs.points.reserve(weekly.points.size() - 1);
    for (std::size_t i = 1; i < weekly.points.size(); ++i) {
        rs.points.push_back({weekly.points[i].week,
                             std::log(weekly.points[i].mean_price /
                                      weekly.points[i - 1].mean_price)});
    }
    return rs;
}

FlowSummary summarize_flows(const Dataset& ds) {
    std::map<std::pair<AccountClass, AccountClass>, std::pair<std::size_t, double>> pairs;
    std::map<RegistryCode, FlowSummary::RegistryActivity> regs;
    std::size_t total_count = 0;
    double total_value = 0.0;
    std::size_t unvalued = 0;

    for (const auto& t : ds.transfers) {
        auto& [count, value] = pairs[{t.from_class, t.to_class}];
        ++count;
        ++total_count;
        const double v = t.value_eur.value_or(0.0);
        if (t.value_eur) {
            value += v;
            total_value += v;
        } else {
            ++unvalued;
        }

        auto& out = regs[t.from_registry];
        out.registry = t.from_registry;
        ++out.transfers_out;
        out.value_out += v;
        auto& in = regs[t.to_registry];
        in.registry = t.to_registry;
        ++in.transfers_in;
        in.value_in += v;
    }

    FlowSummary summary;
    summary.unvalued_transfers = unvalued;
    for (const auto& [key, agg] : pairs) {
        FlowSummary::PairShare share;
        share.from = key.first;
        share.to = key.second;
        share.count = agg.first;
        share.count_share = total_count > 0 ? static_cast<double>(agg.first) / total_count : 0.0;
        share.value_eur = agg.second;
        share.value_share = total_value > 0.0 ? agg.second / total_value : 0.0;
        summary.pairs.push_back(share);
    }
    for (const auto& [code, activity] : regs) summary.registries.push_back(activity);
    return summary;
}

}  // namespace ets::ingest
