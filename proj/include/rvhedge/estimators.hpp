#pragma once

#include "rvhedge/series.hpp"

#include <span>
#include <vector>

namespace rvhedge {

// Empirical q-th absolute moment of non-overlapping delta-day increments of
// log(series):
//   m(q, delta) = (1/N) sum_{k=1..N} |log v_{k delta} - log v_{(k-1) delta}|^q
// with N = floor((n_obs - 1) / delta). Requires q > 0, delta >= 1 and at
// least 2 * delta observations, all strictly positive.
double m_q_delta(const DatedSeries& series, double q, int delta_days);

struct HurstFit {
    double hurst = 0.0;        // slope of log m(2, .) on log delta, halved
    double intercept = 0.0;    // OLS intercept in the log-log regression
    double r_squared = 0.0;
    std::vector<int> lags_used; // strictly increasing, zero-moment lags dropped
};

// OLS fit of log m(2, delta) against log delta over the given lags.
// Lags are deduplicated and sorted; at least two distinct lags must survive.
// Throws std::runtime_error("constant series") when fewer than two lags have
// a positive moment, and std::domain_error when the fitted exponent leaves
// (0, 1).
HurstFit estimate_hurst(const DatedSeries& vix, std::span<const int> lags);

// Default lag set {1, ..., 30}.
HurstFit estimate_hurst(const DatedSeries& vix);

// Scale estimate consistent with variance_increment at the given hurst:
//   sigma_hat = sqrt(m(2, delta) / (delta / 252)^{2H}).
double estimate_sigma_rfsv(const DatedSeries& vix, double hurst, int delta_days);

enum class GammaMode {
    LogIncrements,  // gamma^2 = (1/(n dt)) sum (d log VIX)^2, lognormal fit
    LevelIncrements // gamma^2 = (4/(n dt)) sum (d VIX)^2, square-root fit
};

// Quadratic-variation volatility estimate from daily increments, dt = 1/252.
double estimate_gamma_quadratic_variation(const DatedSeries& vix, GammaMode mode);

} // namespace rvhedge
