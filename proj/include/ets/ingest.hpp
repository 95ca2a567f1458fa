#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ets/core.hpp"

namespace ets::ingest {

enum class ParseMode { Lenient, Strict };

struct ParseIssue {
    std::size_t row = 0;  // 1-based line number in the source file
    std::string message;
};

struct ParseReport {
    std::string path;
    std::size_t total_rows = 0;  // data rows seen (header excluded)
    std::size_t accepted = 0;
    std::vector<ParseIssue> issues;

    [[nodiscard]] std::size_t skipped() const { return total_rows - accepted; }
};

/// Optional renaming of CSV columns: canonical name -> name appearing in
/// the file's header. Unmapped columns keep their canonical names.
struct CsvSchema {
    std::map<std::string, std::string> rename;

    [[nodiscard]] std::string resolve(const std::string& canonical) const {
        auto it = rename.find(canonical);
        return it == rename.end() ? canonical : it->second;
    }
};

/// Reads the transactions CSV
/// (id,date,from_registry,to_registry,from_class,to_class,quantity).
/// Rows violating the schema or domain invariants are skipped with a
/// row-numbered diagnostic in lenient mode and fatal in strict mode.
/// value_eur is left unset. Throws DataError for a missing file or a
/// header that does not match the schema.
std::vector<TransferRecord> parse_transactions(const std::string& path, ParseMode mode,
                                               ParseReport& report,
                                               const CsvSchema& schema = {});

/// Reads the prices CSV (date,market,price); market is PRIMARY or
/// SECONDARY; nonpositive prices are rejected.
std::vector<PriceObservation> parse_prices(const std::string& path, ParseMode mode,
                                           ParseReport& report, const CsvSchema& schema = {});

struct Provenance {
    std::string transactions_path;
    std::string prices_path;
    std::size_t transaction_rows = 0;  // accepted
    std::size_t price_rows = 0;        // accepted
};

struct Dataset {
    std::vector<TransferRecord> transfers;  // sorted by (date, id), ids unique
    std::vector<PriceObservation> prices;   // sorted by (date, market)
    Provenance provenance;
};

/// Parses both files and assembles a Dataset: sorts, and drops (lenient)
/// or rejects (strict) duplicate transfer ids.
Dataset load_dataset(const std::string& transactions_path, const std::string& prices_path,
                     ParseMode mode, ParseReport& tx_report, ParseReport& price_report,
                     const CsvSchema& schema = {});

struct FilterOptions {
    Date window_start = kStudyWindowStart;
    Date window_end = kStudyWindowEnd;
    /// When set, keep only transfers whose two account classes differ
    /// (strict OHA<->PHA reading); default keeps every non-ADMIN pair.
    bool cross_class_only = false;
};

/// Restricts to compliance-relevant flows: drops every transfer with an
/// ADMIN endpoint and clips to the study window.
Dataset filter_compliance_flows(Dataset ds, const FilterOptions& options = {});

struct EnrichOptions {
    /// Longest accepted gap (days) when carrying the latest earlier
    /// secondary price forward to a transfer date.
    int max_gap_days = 7;
};

struct EnrichStats {
    std::size_t valued = 0;
    std::size_t unvalued = 0;  // no secondary price within the gap
};

/// Sets value_eur = quantity * secondary spot on the transfer date,
/// forward-filling the most recent earlier price up to max_gap_days.
/// Unmatched transfers keep an empty value and are counted.
Dataset enrich_values(Dataset ds, const EnrichOptions& options = {}, EnrichStats* stats = nullptr);

/// Per-week arithmetic mean of SECONDARY prices; weeks with no
/// observations are omitted. Requires at least two distinct weeks.
WeeklyPriceSeries aggregate_weekly(std::span<const PriceObservation> prices);

/// r_t = ln(p_t / p_{t-1}) over consecutive retained weeks.
ReturnSeries log_returns(const WeeklyPriceSeries& weekly);

struct FlowSummary {
    struct PairShare {
        AccountClass from;
        AccountClass to;
        std::size_t count = 0;
        double count_share = 0.0;
        double value_eur = 0.0;
        double value_share = 0.0;
    };
    struct RegistryActivity {
        RegistryCode registry;
        std::size_t transfers_out = 0;
        std::size_t transfers_in = 0;
        double value_out = 0.0;
        double value_in = 0.0;
    };
    std::vector<PairShare> pairs;               // sorted by (from, to)
    std::vector<RegistryActivity> registries;   // sorted by code
    std::size_t unvalued_transfers = 0;         // excluded from value shares
};

/// Descriptive shares of transfer counts and EUR values by account-class
/// pair, plus per-registry activity totals. Count shares include every
/// transfer; value shares cover valued transfers only.
FlowSummary summarize_flows(const Dataset& ds);

/// Sorted (date, price) lookup over the secondary market with bounded
/// forward-fill; shared by enrichment and the elasticity flow builder.
class SecondaryPriceIndex {
public:
    explicit SecondaryPriceIndex(std::span<const PriceObservation> prices);

    /// Latest secondary price at or before `d` within `max_gap_days`;
    /// NaN when none qualifies.
    [[nodiscard]] double lookup(const Date& d, int max_gap_days) const;

private:
    std::vector<std::pair<std::int64_t, double>> by_serial_;
};

}  // namespace ets::ingest
