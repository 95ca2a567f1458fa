#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ets {

/// Civil (proleptic Gregorian) calendar date. No time zones, no
/// intraday component; dates compare and subtract as day counts.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;

    /// Days since 1970-01-01 (negative before).
    [[nodiscard]] std::int64_t serial() const;

    [[nodiscard]] static Date from_serial(std::int64_t days);

    /// True if (year, month, day) is a real Gregorian date.
    [[nodiscard]] bool valid() const;

    /// ISO weekday, 1 = Monday .. 7 = Sunday.
    [[nodiscard]] int iso_weekday() const;

    [[nodiscard]] Date plus_days(std::int64_t n) const { return from_serial(serial() + n); }

    /// Formats as YYYY-MM-DD.
    [[nodiscard]] std::string str() const;

    /// Parses strict YYYY-MM-DD; throws DataError on malformed input
    /// or an invalid calendar date.
    static Date parse(std::string_view text);
};

inline std::int64_t operator-(const Date& a, const Date& b) { return a.serial() - b.serial(); }

/// ISO-8601 year-week pair. The ISO year can differ from the civil year
/// near January 1 (e.g. 2016-01-01 falls in 2015-W53).
struct IsoWeek {
    int year = 1970;
    int week = 1;  // 1..53

    auto operator<=>(const IsoWeek&) const = default;

    /// Formats as YYYY-Www, e.g. "2010-W01".
    [[nodiscard]] std::string str() const;

    static IsoWeek parse(std::string_view text);
};

/// ISO-8601 week of a date (Monday-start weeks; week 1 contains the
/// year's first Thursday).
IsoWeek iso_week_of(const Date& d);

}  // namespace ets
