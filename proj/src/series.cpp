#include "rvhedge/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rvhedge {

DatedSeries::DatedSeries(SeriesKind kind, std::vector<Date> dates, std::vector<double> values)
    : kind_(kind), dates_(std::move(dates)), values_(std::move(values)) {
    if (dates_.size() != values_.size())
        throw std::invalid_argument("series dates and values differ in length");
    for (std::size_t i = 1; i < dates_.size(); ++i)
        if (!(dates_[i - 1] < dates_[i]))
            throw std::invalid_argument("series dates must be strictly increasing (offending date " +
                                        format_date(dates_[i]) + ")");
    const bool positive = kind_ != SeriesKind::Price;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]))
            throw std::invalid_argument("non-finite value at " + format_date(dates_[i]));
        if (positive && values_[i] <= 0.0)
            throw std::invalid_argument("non-positive value at " + format_date(dates_[i]));
    }
}

std::optional<std::size_t> DatedSeries::index_of(Date d) const {
    const auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - dates_.begin());
}

DatedSeries DatedSeries::slice(std::size_t first, std::size_t last) const {
    if (first > last || last > size()) throw std::out_of_range("bad series slice");
    return DatedSeries(kind_, std::vector<Date>(dates_.begin() + first, dates_.begin() + last),
                       std::vector<double>(values_.begin() + first, values_.begin() + last));
}

void ForwardVarianceStore::insert(Date date, Date maturity, double value) {
    if (!std::isfinite(value) || value <= 0.0)
        throw std::invalid_argument("bad forward variance " + std::to_string(value) + " at " +
                                    format_date(date) + " / " + format_date(maturity));
    const auto key = std::make_pair(date, maturity);
    if (!values_.emplace(key, value).second)
        throw std::invalid_argument("duplicate forward variance quote at " + format_date(date) +
                                    " / " + format_date(maturity));
}

std::optional<double> ForwardVarianceStore::lookup(Date date, Date maturity) const {
    const auto it = values_.find(std::make_pair(date, maturity));
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::vector<ForwardVarianceStore::Entry> ForwardVarianceStore::entries() const {
    std::vector<Entry> out;
    out.reserve(values_.size());
    for (const auto& [key, value] : values_) out.push_back({key.first, key.second, value});
    return out;
}

DatedSeries ForwardVarianceStore::series_for_maturity(Date maturity) const {
    std::vector<Date> dates;
    std::vector<double> values;
    for (const auto& [key, value] : values_) {
        if (key.second == maturity) {
            dates.push_back(key.first);
            values.push_back(value);
        }
    }
    return DatedSeries(SeriesKind::ForwardVariance, std::move(dates), std::move(values));
}

} // namespace rvhedge
