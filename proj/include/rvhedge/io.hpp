#pragma once

#include "rvhedge/replication.hpp"
#include "rvhedge/series.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace rvhedge {

// Shortest-of-12-significant-digits decimal rendering used by every CSV and
// JSON emitter, so outputs are reproducible byte for byte.
std::string format_double(double x);

struct VixIngest {
    DatedSeries series;
    std::vector<std::string> warnings; // e.g. rows re-sorted by date
};

// CSV with header `date,close`. Duplicate dates and non-positive closes are
// hard errors naming the offending line; out-of-order rows are sorted with
// a warning.
VixIngest ingest_vix_csv(const std::filesystem::path& path);

struct FvsIngest {
    ForwardVarianceStore store;
    std::vector<std::string> warnings;
};

// CSV with header `date,maturity_date,forward_variance`. Values must sit in
// (0, 4): annualised variance, so 4 corresponds to a 200% vol level and
// anything above is a unit error.
FvsIngest ingest_fvs_csv(const std::filesystem::path& path);

// CSV with header `date,maturity_date,strike,call_price,put_price`, one
// grid per (date, maturity) pair, strikes sorted on ingest. The spot is
// recovered per grid as the median of the put-call parity readings
// K + C(K) - P(K).
std::vector<OptionGrid> ingest_options_csv(const std::filesystem::path& path);

void write_vix_csv(const std::filesystem::path& path, const DatedSeries& series);
void write_fvs_csv(const std::filesystem::path& path, const ForwardVarianceStore& store);

} // namespace rvhedge
