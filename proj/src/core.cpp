#include "ets/core.hpp"

#include "ets/errors.hpp"

namespace ets {

RegistryCode RegistryCode::parse(std::string_view text) {
    if (text.size() != 2 || text[0] < 'A' || text[0] > 'Z' || text[1] < 'A' || text[1] > 'Z') {
        throw DataError("invalid registry code '" + std::string(text) +
                        "' (expected two uppercase letters)");
    }
    RegistryCode rc;
    rc.code_[0] = text[0];
    rc.code_[1] = text[1];
    return rc;
}

AccountClass parse_account_class(std::string_view text) {
    if (text == "OHA") return AccountClass::OHA;
    if (text == "PHA") return AccountClass::PHA;
    if (text == "ADMIN") return AccountClass::ADMIN;
    throw DataError("unknown account class '" + std::string(text) + "'");
}

std::string_view to_string(AccountClass c) {
    switch (c) {
        case AccountClass::OHA: return "OHA";
        case AccountClass::PHA: return "PHA";
        case AccountClass::ADMIN: return "ADMIN";
    }
    return "?";
}

Market parse_market(std::string_view text) {
    if (text == "PRIMARY") return Market::Primary;
    if (text == "SECONDARY") return Market::Secondary;
    throw DataError("unknown market '" + std::string(text) + "' (expected PRIMARY or SECONDARY)");
}

std::string_view to_string(Market m) {
    return m == Market::Primary ? "PRIMARY" : "SECONDARY";
}

std::vector<double> ReturnSeries::values() const {
    std::vector<double> v;
    v.reserve(points.size());
    for (const auto& p : points) v.push_back(p.r);
    return v;
}

namespace {

// "–" (U+2013) between years, matching the conventional period labels.
std::string segment_label(const Date& first, const Date& last) {
    return std::to_string(first.year) + "–" + std::to_string(last.year);
}

}  // namespace

PeriodSegmentation PeriodSegmentation::with_labels(Date window_start,
                                                   std::vector<Date> breakpoints,
                                                   Date window_end,
                                                   std::vector<std::string> labels) {
    if (!(window_start < window_end)) throw UsageError("period window is empty");
    Date prev = window_start;
    for (const Date& b : breakpoints) {
        if (!(prev < b) || !(b < window_end) || !b.valid()) {
            throw UsageError("breakpoints must be strictly increasing inside the window");
        }
        prev = b;
    }
    if (labels.size() != breakpoints.size() + 1) {
        throw UsageError("need exactly one label per period");
    }
    PeriodSegmentation seg;
    seg.window_start_ = window_start;
    seg.window_end_ = window_end;
    seg.breakpoints_ = std::move(breakpoints);
    seg.labels_ = std::move(labels);
    return seg;
}

PeriodSegmentation PeriodSegmentation::make(Date window_start, std::vector<Date> breakpoints,
                                            Date window_end) {
    std::vector<std::string> labels;
    Date start = window_start;
    for (const Date& b : breakpoints) {
        labels.push_back(segment_label(start, b.plus_days(-1)));
        start = b;
    }
    labels.push_back(segment_label(start, window_end));
    return with_labels(window_start, std::move(breakpoints), window_end, std::move(labels));
}

PeriodSegmentation PeriodSegmentation::standard() {
    return with_labels(kStudyWindowStart, {Date{2013, 1, 1}, Date{2018, 1, 1}}, kStudyWindowEnd,
                       {"2010–2012", "2012–2018", "2018–2020"});
}

std::size_t PeriodSegmentation::index_of(const Date& d) const {
    if (d < window_start_ || window_end_ < d) {
        throw DataError("date " + d.str() + " outside the study window [" + window_start_.str() +
                        ", " + window_end_.str() + "]");
    }
    // Half-open intervals: a breakpoint date belongs to the later period.
    std::size_t idx = 0;
    for (const Date& b : breakpoints_) {
        if (d < b) break;
        ++idx;
    }
    return idx;
}

const std::string& PeriodSegmentation::period_of(const Date& d) const {
    return labels_[index_of(d)];
}

}  // namespace ets
