#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ets/date.hpp"

namespace ets {

/// Two-letter registry (country) identifier, e.g. "DE", "FR", "GB".
class RegistryCode {
public:
    RegistryCode() = default;

    /// Throws DataError unless `text` is exactly two uppercase ASCII letters.
    static RegistryCode parse(std::string_view text);

    [[nodiscard]] std::string str() const { return std::string(code_, 2); }

    auto operator<=>(const RegistryCode&) const = default;

private:
    char code_[2] = {'?', '?'};
};

/// Account classes in the transaction log. Operator holding accounts
/// (compliance entities), person holding accounts (intermediaries and
/// traders), and administrative accounts (issuance, allocation,
/// cancellation by authorities).
enum class AccountClass { OHA, PHA, ADMIN };

/// Strict parse; accepts only "OHA", "PHA", "ADMIN". Throws DataError.
AccountClass parse_account_class(std::string_view text);
std::string_view to_string(AccountClass c);

/// One allowance transfer between two registry accounts.
struct TransferRecord {
    std::string id;
    Date date;
    RegistryCode from_registry;
    RegistryCode to_registry;
    AccountClass from_class = AccountClass::OHA;
    AccountClass to_class = AccountClass::OHA;
    std::int64_t quantity = 0;             // allowances (tCO2), > 0
    std::optional<double> value_eur;       // set by enrichment
};

enum class Market { Primary, Secondary };

Market parse_market(std::string_view text);
std::string_view to_string(Market m);

/// One spot price quote (EUR per allowance).
struct PriceObservation {
    Date date;
    Market market = Market::Secondary;
    double price = 0.0;  // > 0
};

struct WeeklyPricePoint {
    IsoWeek week;
    double mean_price = 0.0;
    int n_obs = 0;
};

/// Weekly mean of secondary-market spot prices though the sample,
/// strictly increasing in week; weeks with no observations are absent.
struct WeeklyPriceSeries {
    std::vector<WeeklyPricePoint> points;
};

struct ReturnPoint {
    IsoWeek week;  // week of p_t (the later week of the pair)
    double r = 0.0;
};

/// Weekly log returns r_t = ln(p_t / p_{t-1}) over consecutive retained
/// weeks; one element shorter than the price series it came from.
struct ReturnSeries {
    std::vector<ReturnPoint> points;

    [[nodiscard]] std::vector<double> values() const;
};

/// Default study window (inclusive bounds).
inline constexpr Date kStudyWindowStart{2010, 1, 5};
inline constexpr Date kStudyWindowEnd{2020, 4, 30};

/// Partition of the study window into labeled, half-open periods
/// [start_i, start_{i+1}); the final period also includes the window end.
class PeriodSegmentation {
public:
    /// Builds a segmentation from window bounds and interior breakpoints;
    /// labels derived as "YYYY–YYYY" from each segment's first/last year.
    static PeriodSegmentation make(Date window_start, std::vector<Date> breakpoints,
                                   Date window_end);

    /// As `make` but with caller-supplied labels (one per segment).
    static PeriodSegmentation with_labels(Date window_start, std::vector<Date> breakpoints,
                                          Date window_end, std::vector<std::string> labels);

    /// The default three-period segmentation of the study window with
    /// breakpoints 2013-01-01 and 2018-01-01 and the conventional labels
    /// "2010–2012", "2012–2018", "2018–2020".
    static PeriodSegmentation standard();

    /// Index of the period containing `d`; throws DataError if `d` lies
    /// outside the window.
    [[nodiscard]] std::size_t index_of(const Date& d) const;

    /// Label of the period containing `d`.
    [[nodiscard]] const std::string& period_of(const Date& d) const;

    [[nodiscard]] std::size_t size() const { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
    [[nodiscard]] const std::vector<Date>& breakpoints() const { return breakpoints_; }
    [[nodiscard]] Date window_start() const { return window_start_; }
    [[nodiscard]] Date window_end() const { return window_end_; }

private:
    Date window_start_;
    Date window_end_;
    std::vector<Date> breakpoints_;
    std::vector<std::string> labels_;
};

}  // namespace ets
