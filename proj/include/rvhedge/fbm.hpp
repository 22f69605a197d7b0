#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rvhedge {

// Parameters of the log-VIX driver: Hurst exponent in (0,1) and the
// volatility-of-log-VIX scale sigma >= 0 (per sqrt(year)).
struct FbmParams {
    double hurst = 0.5;
    double sigma = 0.0;
};

// Throws std::invalid_argument when hurst is outside (0,1) or sigma < 0.
void validate(const FbmParams& p);

// Variance of log VIX_T conditional on time t, tau = T - t in years:
//   sigma^2 tau^{2H} / (2H Gamma(H + 1/2)^2).
// Reduces to sigma^2 tau at H = 1/2. Throws on tau < 0.
double variance_increment(const FbmParams& p, double tau);

// Covariance of standard fBm (unit scale):
//   (|s|^{2H} + |t|^{2H} - |s - t|^{2H}) / 2,  s, t >= 0.
double fbm_covariance(double hurst, double s, double t);

// Dense set of paths, row-major: n_paths rows, n_points = n_steps + 1
// columns including the t = 0 origin.
struct PathMatrix {
    std::size_t n_paths = 0;
    std::size_t n_points = 0;
    double dt = 0.0;
    std::vector<double> data;

    double at(std::size_t path, std::size_t k) const { return data[path * n_points + k]; }
};

// Exact simulation through Cholesky factorisation of the covariance of
// (B_{dt}, ..., B_{n_steps dt}). n_steps is capped at 4096 to keep the
// dense factorisation bounded; larger requests throw std::invalid_argument.
// On a failed factorisation a diagonal jitter of at most 1e-10 * max
// variance is applied once before giving up with std::runtime_error
// ("cholesky failure").
PathMatrix simulate_fbm_paths(double hurst, std::size_t n_steps, double dt,
                              std::size_t n_paths, std::uint64_t seed);

// One path of the synthetic VIX market driven by a Riemann-Liouville
// fractional Brownian motion with a common increment grid:
//   X_t    = sigma / Gamma(H + 1/2) * sum_{s_j < t} (t - s_j)^{H - 1/2} dW_j
//   VIX_t  = c_level * exp(X_t)
//   F^T_t  = c_level^2 * exp(2 * (Z_t(T) + variance_increment(T - t)))
// where Z_t(T) uses the same kernel weights evaluated at T. F^T_T equals
// VIX_T^2 identically because both reduce to the same weighted sum.
struct RlMarketPath {
    std::vector<double> vix;     // size n_steps + 1
    std::vector<double> fwd_var; // size index(T) + 1, quotes of F^T_t for t <= T
};

struct RlMarket {
    double dt = 0.0;
    double horizon = 0.0;             // T, lies on the grid
    std::vector<double> times;        // 0, dt, ..., n_steps * dt
    std::vector<RlMarketPath> paths;
};

// horizon must coincide with a grid time k * dt (k <= n_steps) up to 1e-9.
RlMarket simulate_rl_market(const FbmParams& p, double c_level,
                            std::size_t n_steps, double dt, double horizon,
                            std::size_t n_paths, std::uint64_t seed);

} // namespace rvhedge
