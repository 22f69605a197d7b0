#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rvhedge/fbm.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace rvhedge;

TEST_CASE("fbm parameter validation") {
    CHECK_NOTHROW(validate(FbmParams{0.377, 0.5}));
    CHECK_NOTHROW(validate(FbmParams{0.5, 0.0}));
    CHECK_THROWS_AS(validate(FbmParams{0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(FbmParams{1.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(FbmParams{-0.1, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(validate(FbmParams{0.4, -0.1}), std::invalid_argument);
}

TEST_CASE("variance increment closed form") {
    // sigma^2 tau^{2H} / (2H Gamma(H+1/2)^2) at H = 0.377, sigma = 0.5,
    // tau = 29/252; frozen from a high precision evaluation.
    const double v = variance_increment(FbmParams{0.377, 0.5}, 29.0 / 252.0);
    CHECK(v == doctest::Approx(0.054875445660801867).epsilon(1e-14));

    CHECK(variance_increment(FbmParams{0.25, 1.5}, 0.0) == 0.0);
    CHECK_THROWS_AS(variance_increment(FbmParams{0.25, 1.5}, -0.01), std::invalid_argument);
}

TEST_CASE("variance increment at hurst one half is exactly sigma^2 tau") {
    // Gamma(1) = 1 and 2H = 1 make the H = 0.5 branch algebraically exact;
    // the pricers rely on this to reduce bitwise to the lognormal model.
    for (double sigma : {0.2, 0.7, 1.3}) {
        for (double tau : {29.0 / 252.0, 0.5, 2.0}) {
            CHECK(variance_increment(FbmParams{0.5, sigma}, tau) == (sigma * sigma) * tau);
        }
    }
}

TEST_CASE("fbm covariance basics") {
    CHECK(fbm_covariance(0.3, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // H = 1/2 collapses to min(s, t)
    CHECK(fbm_covariance(0.5, 0.7, 1.9) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(fbm_covariance(0.5, 2.5, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
    // symmetry and self-similarity Var(B_t) = t^{2H}
    CHECK(fbm_covariance(0.3, 0.4, 1.1) == doctest::Approx(fbm_covariance(0.3, 1.1, 0.4)));
    CHECK(fbm_covariance(0.3, 2.0, 2.0) == doctest::Approx(std::pow(2.0, 0.6)).epsilon(1e-15));
    CHECK(fbm_covariance(0.3, 0.0, 1.0) == 0.0);
}

TEST_CASE("cholesky fbm paths have the right shape and law") {
    const std::size_t n_steps = 64, n_paths = 400;
    const double dt = 1.0 / 252.0, hurst = 0.35;
    const PathMatrix m = simulate_fbm_paths(hurst, n_steps, dt, n_paths, 42);

    CHECK(m.n_paths == n_paths);
    CHECK(m.n_points == n_steps + 1);
    CHECK(m.dt == dt);
    for (std::size_t p = 0; p < n_paths; ++p) CHECK(m.at(p, 0) == 0.0);

    // terminal variance should match t^{2H}; with 400 paths the sample
    // variance of a Gaussian has relative sd sqrt(2/400) ~ 7%, allow 4 sd
    const double t_end = double(n_steps) * dt;
    double acc = 0.0;
    for (std::size_t p = 0; p < n_paths; ++p) acc += m.at(p, n_steps) * m.at(p, n_steps);
    const double sample_var = acc / double(n_paths);
    const double expected = std::pow(t_end, 2.0 * hurst);
    CHECK(std::abs(sample_var / expected - 1.0) < 4.0 * std::sqrt(2.0 / double(n_paths)));
}

TEST_CASE("fbm simulation is deterministic in the seed") {
    const PathMatrix a = simulate_fbm_paths(0.4, 16, 1.0 / 252.0, 3, 7);
    const PathMatrix b = simulate_fbm_paths(0.4, 16, 1.0 / 252.0, 3, 7);
    const PathMatrix c = simulate_fbm_paths(0.4, 16, 1.0 / 252.0, 3, 8);
    CHECK(a.data == b.data);
    CHECK(a.data != c.data);
}

TEST_CASE("fbm path simulation rejects oversized requests") {
    CHECK_THROWS_AS(simulate_fbm_paths(0.4, 5000, 1.0 / 252.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_fbm_paths(0.4, 0, 1.0 / 252.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(simulate_fbm_paths(1.2, 8, 1.0 / 252.0, 1, 1), std::invalid_argument);
}

TEST_CASE("rl market terminal forward equals squared vix") {
    const FbmParams params{0.377, 0.5};
    const double dt = 1.0 / 252.0;
    const std::size_t n_steps = 40;
    const double horizon = 29.0 * dt;
    const RlMarket mkt = simulate_rl_market(params, 0.2, n_steps, dt, horizon, 8, 123);

    CHECK(mkt.times.size() == n_steps + 1);
    CHECK(mkt.paths.size() == 8);
    const std::size_t k_mat = 29;
    for (const RlMarketPath& path : mkt.paths) {
        REQUIRE(path.vix.size() == n_steps + 1);
        REQUIRE(path.fwd_var.size() == k_mat + 1);
        const double vix2 = path.vix[k_mat] * path.vix[k_mat];
        CHECK(path.fwd_var[k_mat] == doctest::Approx(vix2).epsilon(1e-13));
        for (double v : path.vix) CHECK(v > 0.0);
        for (double f : path.fwd_var) CHECK(f > 0.0);
    }
}

TEST_CASE("rl market forward is a martingale in sample") {
    const FbmParams params{0.377, 0.5};
    const double dt = 1.0 / 252.0;
    const std::size_t n_paths = 4000;
    const RlMarket mkt = simulate_rl_market(params, 0.2, 29, dt, 29.0 * dt, n_paths, 2024);

    // E[F^T_T] should equal F^T_0 (deterministic); compare within 4 sample sd
    const double f0 = mkt.paths[0].fwd_var[0];
    CHECK(mkt.paths[1].fwd_var[0] == f0);
    double mean = 0.0, m2 = 0.0;
    for (const auto& p : mkt.paths) mean += p.fwd_var[29];
    mean /= double(n_paths);
    for (const auto& p : mkt.paths) {
        const double d = p.fwd_var[29] - mean;
        m2 += d * d;
    }
    const double se = std::sqrt(m2 / double(n_paths)) / std::sqrt(double(n_paths));
    CHECK(std::abs(mean - f0) < 4.0 * se);
}

TEST_CASE("rl market horizon must sit on the grid") {
    CHECK_THROWS_AS(simulate_rl_market(FbmParams{0.4, 0.5}, 0.2, 20, 1.0 / 252.0,
                                       10.5 / 252.0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_rl_market(FbmParams{0.4, 0.5}, 0.2, 20, 1.0 / 252.0,
                                       25.0 / 252.0, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_rl_market(FbmParams{0.4, 0.5}, -0.2, 20, 1.0 / 252.0,
                                       10.0 / 252.0, 1, 1),
                    std::invalid_argument);
}
