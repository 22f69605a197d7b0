#pragma once

#include "rvhedge/calendar.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace rvhedge {

enum class SeriesKind {
    VixLevel,        // index points, strictly positive
    ForwardVariance, // annualised variance units, strictly positive
    Price            // generic price/PnL series, any finite value
};

// Immutable date-indexed series. Dates are strictly increasing; values are
// finite, and strictly positive for VixLevel and ForwardVariance.
class DatedSeries {
public:
    DatedSeries() : kind_(SeriesKind::Price) {}
    DatedSeries(SeriesKind kind, std::vector<Date> dates, std::vector<double> values);

    SeriesKind kind() const { return kind_; }
    std::size_t size() const { return dates_.size(); }
    bool empty() const { return dates_.empty(); }

    Date date(std::size_t i) const { return dates_[i]; }
    double value(std::size_t i) const { return values_[i]; }

    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }

    // Index of an exact date, if present.
    std::optional<std::size_t> index_of(Date d) const;

    // Half-open sub-range [first, last) as a new series.
    DatedSeries slice(std::size_t first, std::size_t last) const;

private:
    SeriesKind kind_;
    std::vector<Date> dates_;
    std::vector<double> values_;
};

// Forward variance quotes keyed by (observation date, maturity date).
// Stores F^T_t = E[VIX_T^2 | F_t] style values, one per key.
class ForwardVarianceStore {
public:
    struct Entry {
        Date date;
        Date maturity;
        double value;
    };

    // Throws on duplicate (date, maturity) keys and on non-finite or
    // non-positive values.
    void insert(Date date, Date maturity, double value);

    std::optional<double> lookup(Date date, Date maturity) const;

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    // All entries sorted by (date, maturity).
    std::vector<Entry> entries() const;

    // Observation series for one maturity, sorted by date.
    DatedSeries series_for_maturity(Date maturity) const;

private:
    std::map<std::pair<Date, Date>, double> values_;
};

} // namespace rvhedge
