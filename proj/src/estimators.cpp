#include "rvhedge/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rvhedge {

namespace {

void require_positive_values(const DatedSeries& series) {
    for (std::size_t i = 0; i < series.size(); ++i)
        if (!(series.value(i) > 0.0))
            throw std::invalid_argument("log increments need strictly positive levels");
}

} // namespace

double m_q_delta(const DatedSeries& series, double q, int delta_days) {
    if (!(q > 0.0)) throw std::invalid_argument("q must be positive");
    if (delta_days < 1) throw std::invalid_argument("delta must be at least one day");
    const std::size_t need = 2 * static_cast<std::size_t>(delta_days);
    if (series.size() < need)
        throw std::invalid_argument("m_q_delta: need at least " + std::to_string(need) +
                                    " observations, got " + std::to_string(series.size()));
    require_positive_values(series);

    const auto delta = static_cast<std::size_t>(delta_days);
    const std::size_t n_inc = (series.size() - 1) / delta;
    double acc = 0.0;
    for (std::size_t k = 1; k <= n_inc; ++k) {
        const double inc =
            std::log(series.value(k * delta)) - std::log(series.value((k - 1) * delta));
        acc += std::pow(std::abs(inc), q);
    }
    return acc / double(n_inc);
}

HurstFit estimate_hurst(const DatedSeries& vix, std::span<const int> lags) {
    std::vector<int> sorted(lags.begin(), lags.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() < 2) throw std::invalid_argument("need at least two distinct lags");

    std::vector<int> used;
    std::vector<double> log_lag, log_m;
    for (int lag : sorted) {
        const double m = m_q_delta(vix, 2.0, lag);
        if (m <= 0.0) continue; // flat at this lag, nothing to regress on
        used.push_back(lag);
        log_lag.push_back(std::log(double(lag)));
        log_m.push_back(std::log(m));
    }
    if (used.size() < 2) throw std::runtime_error("constant series");

    const double n = double(used.size());
    const double mx = std::accumulate(log_lag.begin(), log_lag.end(), 0.0) / n;
    const double my = std::accumulate(log_m.begin(), log_m.end(), 0.0) / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < used.size(); ++i) {
        const double dx = log_lag[i] - mx;
        const double dy = log_m[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;

    HurstFit fit;
    fit.hurst = 0.5 * slope;
    fit.intercept = my - slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    fit.lags_used = std::move(used);
    if (!(fit.hurst > 0.0 && fit.hurst < 1.0))
        throw std::domain_error("hurst estimate " + std::to_string(fit.hurst) +
                                " outside (0, 1)");
    return fit;
}

HurstFit estimate_hurst(const DatedSeries& vix) {
    std::vector<int> lags(30);
    std::iota(lags.begin(), lags.end(), 1);
    return estimate_hurst(vix, lags);
}

double estimate_sigma_rfsv(const DatedSeries& vix, double hurst, int delta_days) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("hurst must lie in (0, 1)");
    const double m2 = m_q_delta(vix, 2.0, delta_days);
    const double delta_years = double(delta_days) / kBusinessDaysPerYear;
    return std::sqrt(m2 / std::pow(delta_years, 2.0 * hurst));
}

double estimate_gamma_quadratic_variation(const DatedSeries& vix, GammaMode mode) {
    if (vix.size() < 2) throw std::invalid_argument("need at least two observations");
    const double dt = 1.0 / kBusinessDaysPerYear;
    if (mode == GammaMode::LogIncrements) {
        // Identical arithmetic to estimate_sigma_rfsv at hurst = 1/2, delta =
        // one day: the lognormal and rough fits meet exactly there.
        const double m2 = m_q_delta(vix, 2.0, 1);
        return std::sqrt(m2 / std::pow(dt, 1.0));
    }
    require_positive_values(vix);
    const double n = double(vix.size() - 1);
    double acc = 0.0;
    for (std::size_t i = 1; i < vix.size(); ++i) {
        const double inc = vix.value(i) - vix.value(i - 1);
        acc += inc * inc;
    }
    return std::sqrt(4.0 * acc / (n * dt));
}

} // namespace rvhedge
