#pragma once

#include <span>
#include <vector>

#include "ets/core.hpp"
#include "ets/date.hpp"

namespace testutil {

/// Wraps raw return values in a ReturnSeries with consecutive ISO weeks
/// starting at 2010-W01.
inline ets::ReturnSeries make_return_series(std::span<const double> values) {
    ets::ReturnSeries rs;
    ets::Date monday{2010, 1, 4};
    for (double v : values) {
        rs.points.push_back({ets::iso_week_of(monday), v});
        monday = monday.plus_days(7);
    }
    return rs;
}

}  // namespace testutil
