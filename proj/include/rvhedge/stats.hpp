#pragma once

#include <cstddef>
#include <span>

namespace rvhedge {

// Population moments of a PnL sample. std and rmse use the 1/n convention,
// so rmse^2 == mean^2 + std^2 holds exactly.
struct StatsSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double rmse = 0.0;
};

// Throws std::invalid_argument("no samples") on an empty span.
StatsSummary summarize(std::span<const double> samples);

// rmse(no_hedge) / rmse(hedge). Throws std::invalid_argument("degenerate
// hedge") when the hedged rmse is zero.
double reduction_factor(const StatsSummary& no_hedge, const StatsSummary& hedge);

} // namespace rvhedge
