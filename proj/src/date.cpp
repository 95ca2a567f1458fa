#include "ets/date.hpp"

#include <array>
#include <cstdio>

#include "ets/errors.hpp"

namespace ets {

namespace {

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return lengths[static_cast<std::size_t>(m - 1)];
}

// Era-based civil-date <-> serial-day conversion (proleptic Gregorian).
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

}  // namespace

std::int64_t Date::serial() const { return days_from_civil(year, month, day); }

Date Date::from_serial(std::int64_t days) { return civil_from_days(days); }

bool Date::valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

int Date::iso_weekday() const {
    // serial 0 = 1970-01-01, a Thursday.
    std::int64_t s = serial();
    return static_cast<int>(((s % 7) + 10) % 7) + 1;
}

std::string Date::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date Date::parse(std::string_view text) {
    auto fail = [&] { throw DataError("invalid date '" + std::string(text) + "' (expected YYYY-MM-DD)"); };
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') fail();
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            char c = text[i];
            if (c < '0' || c > '9') fail();
            v = v * 10 + (c - '0');
        }
        return v;
    };
    Date d{num(0, 4), num(5, 2), num(8, 2)};
    if (!d.valid()) fail();
    return d;
}

std::string IsoWeek::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-W%02d", year, week);
    return buf;
}

IsoWeek IsoWeek::parse(std::string_view text) {
    auto fail = [&] { throw DataError("invalid ISO week '" + std::string(text) + "' (expected YYYY-Www)"); };
    if (text.size() != 8 || text[4] != '-' || text[5] != 'W') fail();
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            char c = text[i];
            if (c < '0' || c > '9') fail();
            v = v * 10 + (c - '0');
        }
        return v;
    };
    IsoWeek w{num(0, 4), num(6, 2)};
    if (w.week < 1 || w.week > 53) fail();
    return w;
}

IsoWeek iso_week_of(const Date& d) {
    if (!d.valid()) throw DataError("iso_week_of: invalid date " + d.str());
    // The Thursday of d's Monday-start week determines both the ISO year
    // and the week number.
    const std::int64_t thursday = d.serial() + (4 - d.iso_weekday());
    const Date th = Date::from_serial(thursday);
    const std::int64_t jan1 = Date{th.year, 1, 1}.serial();
    const int week = static_cast<int>((thursday - jan1) / 7) + 1;
    return IsoWeek{th.year, week};
}

}  // namespace ets
