#include "rvhedge/fbm.hpp"

#include "rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace rvhedge {

void validate(const FbmParams& p) {
    if (!(p.hurst > 0.0 && p.hurst < 1.0))
        throw std::invalid_argument("hurst must lie in (0, 1)");
    if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma))
        throw std::invalid_argument("sigma must be non-negative");
}

double variance_increment(const FbmParams& p, double tau) {
    validate(p);
    if (tau < 0.0) throw std::invalid_argument("negative horizon");
    if (tau == 0.0) return 0.0;
    const double two_h = 2.0 * p.hurst;
    const double g = std::tgamma(p.hurst + 0.5);
    return p.sigma * p.sigma * std::pow(tau, two_h) / (two_h * g * g);
}

double fbm_covariance(double hurst, double s, double t) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("hurst must lie in (0, 1)");
    if (s < 0.0 || t < 0.0) throw std::invalid_argument("times must be non-negative");
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(s, two_h) + std::pow(t, two_h) - std::pow(std::abs(t - s), two_h));
}

PathMatrix simulate_fbm_paths(double hurst, std::size_t n_steps, double dt,
                              std::size_t n_paths, std::uint64_t seed) {
    if (!(hurst > 0.0 && hurst < 1.0))
        throw std::invalid_argument("hurst must lie in (0, 1)");
    if (n_steps == 0 || n_paths == 0) throw std::invalid_argument("need n_steps, n_paths >= 1");
    if (n_steps > 4096)
        throw std::invalid_argument("n_steps above the 4096 dense-cholesky cap");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");

    const auto n = static_cast<Eigen::Index>(n_steps);
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double c = fbm_covariance(hurst, double(i + 1) * dt, double(j + 1) * dt);
            cov(i, j) = c;
            cov(j, i) = c;
        }

    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        // One shot of diagonal jitter, small relative to the largest variance.
        const double jitter = 1e-10 * cov.diagonal().maxCoeff();
        cov.diagonal().array() += jitter;
        llt.compute(cov);
        if (llt.info() != Eigen::Success) throw std::runtime_error("cholesky failure");
    }
    const Eigen::MatrixXd lower = llt.matrixL();

    PathMatrix out;
    out.n_paths = n_paths;
    out.n_points = n_steps + 1;
    out.dt = dt;
    out.data.assign(n_paths * out.n_points, 0.0);

    Eigen::VectorXd z(n);
    for (std::size_t p = 0; p < n_paths; ++p) {
        auto rng = detail::substream(seed, p);
        std::normal_distribution<double> normal;
        for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
        const Eigen::VectorXd path = lower * z;
        double* row = out.data.data() + p * out.n_points;
        row[0] = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) row[i + 1] = path(i);
    }
    return out;
}

RlMarket simulate_rl_market(const FbmParams& p, double c_level, std::size_t n_steps,
                            double dt, double horizon, std::size_t n_paths,
                            std::uint64_t seed) {
    validate(p);
    if (!(c_level > 0.0)) throw std::invalid_argument("c_level must be positive");
    if (n_steps == 0 || n_paths == 0) throw std::invalid_argument("need n_steps, n_paths >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const double k_real = horizon / dt;
    const auto i_mat = static_cast<std::size_t>(std::llround(k_real));
    if (std::abs(k_real - double(i_mat)) > 1e-9 * std::max(1.0, k_real) || i_mat < 1 ||
        i_mat > n_steps)
        throw std::invalid_argument("horizon must lie on the simulation grid");

    const double a = p.hurst - 0.5;
    const double scale = p.sigma / std::tgamma(p.hurst + 0.5);
    const double sqrt_dt = std::sqrt(dt);

    // scale * (d dt)^{H - 1/2}, the convolution weight for a lag of d steps.
    std::vector<double> w(n_steps + 1, 0.0);
    for (std::size_t d = 1; d <= n_steps; ++d) w[d] = scale * std::pow(double(d) * dt, a);

    // Deterministic compensator 2 * variance_increment(T - t_i).
    std::vector<double> comp(i_mat + 1, 0.0);
    for (std::size_t i = 0; i < i_mat; ++i)
        comp[i] = 2.0 * variance_increment(p, double(i_mat - i) * dt);

    RlMarket market;
    market.dt = dt;
    market.horizon = double(i_mat) * dt;
    market.times.resize(n_steps + 1);
    for (std::size_t i = 0; i <= n_steps; ++i) market.times[i] = double(i) * dt;
    market.paths.resize(n_paths);

    std::vector<double> dw(n_steps);
    std::vector<double> x(n_steps + 1);
    for (std::size_t path = 0; path < n_paths; ++path) {
        auto rng = detail::substream(seed, path);
        std::normal_distribution<double> normal;
        for (std::size_t j = 0; j < n_steps; ++j) dw[j] = normal(rng) * sqrt_dt;

        x[0] = 0.0;
        for (std::size_t i = 1; i <= n_steps; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < i; ++j) acc += w[i - j] * dw[j];
            x[i] = acc;
        }

        RlMarketPath& out = market.paths[path];
        out.vix.resize(n_steps + 1);
        for (std::size_t i = 0; i <= n_steps; ++i) out.vix[i] = c_level * std::exp(x[i]);

        // Z_i accumulates the same weighted sum as x[i_mat], cut at time i, so
        // the final forward quote collapses onto VIX_T^2.
        out.fwd_var.resize(i_mat + 1);
        double z = 0.0;
        for (std::size_t i = 0; i <= i_mat; ++i) {
            if (i > 0) z += w[i_mat - (i - 1)] * dw[i - 1];
            out.fwd_var[i] = c_level * c_level * std::exp(2.0 * z + comp[i]);
        }
    }
    return market;
}

} // namespace rvhedge
