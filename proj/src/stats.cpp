#include "rvhedge/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace rvhedge {

StatsSummary summarize(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    double sum = 0.0;
    for (double x : samples) sum += x;
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    double ss_centered = 0.0;
    double ss_raw = 0.0;
    for (double x : samples) {
        ss_centered += (x - mean) * (x - mean);
        ss_raw += x * x;
    }
    StatsSummary out;
    out.n = samples.size();
    out.mean = mean;
    out.std_dev = std::sqrt(ss_centered / n);
    out.rmse = std::sqrt(ss_raw / n);
    return out;
}

double reduction_factor(const StatsSummary& no_hedge, const StatsSummary& hedge) {
    if (hedge.rmse <= 0.0) throw std::invalid_argument("degenerate hedge");
    return no_hedge.rmse / hedge.rmse;
}

} // namespace rvhedge
