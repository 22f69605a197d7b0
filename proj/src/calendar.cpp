#include "rvhedge/calendar.hpp"

#include <cstdio>
#include <stdexcept>

namespace rvhedge {

namespace {

bool is_weekend(Date d) {
    const std::chrono::weekday wd{d};
    return wd == std::chrono::Saturday || wd == std::chrono::Sunday;
}

} // namespace

Date parse_date(std::string_view iso) {
    int y = 0, m = 0, day = 0;
    char tail = '\0';
    const std::string buf(iso);
    const int got = std::sscanf(buf.c_str(), "%4d-%2d-%2d%c", &y, &m, &day, &tail);
    if (got != 3 || buf.size() != 10)
        throw std::invalid_argument("bad date '" + buf + "': expected YYYY-MM-DD");
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(day)}};
    if (!ymd.ok())
        throw std::invalid_argument("bad date '" + buf + "': not a calendar date");
    return std::chrono::sys_days{ymd};
}

std::string format_date(Date d) {
    const std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

BusinessCalendar::BusinessCalendar(std::set<Date> holidays) : holidays_(std::move(holidays)) {}

bool BusinessCalendar::is_business_day(Date d) const {
    return !is_weekend(d) && holidays_.find(d) == holidays_.end();
}

Date BusinessCalendar::offset(Date d, int n) const {
    const auto step = std::chrono::days{n >= 0 ? 1 : -1};
    int remaining = n >= 0 ? n : -n;
    Date cur = d;
    while (remaining > 0) {
        cur += step;
        if (is_business_day(cur)) --remaining;
    }
    return cur;
}

Date BusinessCalendar::roll_forward(Date d) const {
    Date cur = d;
    while (!is_business_day(cur)) cur += std::chrono::days{1};
    return cur;
}

} // namespace rvhedge
