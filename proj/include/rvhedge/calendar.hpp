#pragma once

#include <chrono>
#include <set>
#include <string>
#include <string_view>

namespace rvhedge {

// All durations quoted in years use the business-day count convention.
inline constexpr double kBusinessDaysPerYear = 252.0;

using Date = std::chrono::sys_days;

// Parses "YYYY-MM-DD". Throws std::invalid_argument on malformed input or
// an invalid calendar date (e.g. "2012-02-30").
Date parse_date(std::string_view iso);

std::string format_date(Date d);

// Weekday calendar with an optional explicit holiday set. Saturdays and
// Sundays are never business days.
class BusinessCalendar {
public:
    BusinessCalendar() = default;
    explicit BusinessCalendar(std::set<Date> holidays);

    bool is_business_day(Date d) const;

    // n-th business day after d (n may be negative to step backwards).
    // offset(d, 0) returns d unchanged even if d is a holiday.
    Date offset(Date d, int n) const;

    // First business day at or after d.
    Date roll_forward(Date d) const;

private:
    std::set<Date> holidays_;
};

} // namespace rvhedge
