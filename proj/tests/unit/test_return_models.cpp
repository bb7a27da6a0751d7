#include <catch2/catch_amalgamated.hpp>

#include "fundrisk/errors.hpp"
#include "fundrisk/random_stream.hpp"
#include "fundrisk/return_models.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace fundrisk;
using Catch::Approx;

TEST_CASE("sample_innovations: zero volatility gives zeros", "[return_models]") {
    EquityReturnParams p{0.045, 0.0, std::nullopt};
    RandomStream stream(7, 0);
    const auto v = sample_innovations(p, 5, stream);
    REQUIRE(v == std::vector<double>(5, 0.0));
}

TEST_CASE("sample_innovations: empty horizon is an error", "[return_models]") {
    EquityReturnParams p{0.045, 0.175, std::nullopt};
    RandomStream stream(7, 0);
    REQUIRE_THROWS_AS(sample_innovations(p, 0, stream), ConfigError);
}

TEST_CASE("sample_innovations: sample moments match N(0, sigma^2)", "[return_models][statistical]") {
    const double sigma = 0.175;
    const std::size_t n = 100'000;
    EquityReturnParams p{0.0, sigma, std::nullopt};
    for (std::uint64_t seed : {1ull, 42ull, 20200331ull}) {
        RandomStream stream(seed, 3);
        const auto v = sample_innovations(p, n, stream);
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / static_cast<double>(n - 1));
        CHECK(std::abs(mean) <= 3.0 * sigma / std::sqrt(static_cast<double>(n)));
        CHECK(std::abs(sd / sigma - 1.0) <= 0.01);
    }
}

TEST_CASE("random stream is determined by (seed, path index)", "[return_models][determinism]") {
    EquityReturnParams p{0.045, 0.175, MovingAverage{2, -0.3}};
    const auto a = equity_return_path(p, 80, 99, 12);
    const auto b = equity_return_path(p, 80, 99, 12);
    REQUIRE(a.gross_returns == b.gross_returns);

    const auto other_path = equity_return_path(p, 80, 99, 13);
    const auto other_seed = equity_return_path(p, 80, 100, 12);
    CHECK(other_path.gross_returns != a.gross_returns);
    CHECK(other_seed.gross_returns != a.gross_returns);

    // A shorter horizon is a prefix of a longer one.
    const auto prefix = equity_return_path(p, 10, 99, 12);
    CHECK(std::equal(prefix.gross_returns.begin(), prefix.gross_returns.end(), a.gross_returns.begin()));
}

TEST_CASE("uniform draws stay in [0, 1)", "[return_models]") {
    RandomStream s(5, 5);
    for (int i = 0; i < 10'000; ++i) {
        const double u = s.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("apply_moving_average: hand-computed cases", "[return_models]") {
    const std::vector<double> v0{0.3, -0.1};
    CHECK(apply_moving_average(v0, 0, 123.0) == v0);

    const std::vector<double> v1{1.0, 2.0, -1.0};
    CHECK(apply_moving_average(v1, 1, 0.5) == std::vector<double>{1.0, 2.5, 0.0});

    const std::vector<double> v2{4.0, 0.0, 0.0};
    CHECK(apply_moving_average(v2, 2, -0.25) == std::vector<double>{4.0, -1.0, -1.0});

    // Window longer than the series: only available lags contribute.
    const std::vector<double> v3{1.0, 1.0};
    CHECK(apply_moving_average(v3, 5, 1.0) == std::vector<double>{1.0, 2.0});
}

TEST_CASE("apply_moving_average with q = 0 is the identity", "[return_models][property]") {
    std::mt19937_64 gen(11);
    std::normal_distribution<double> dist(0.0, 3.0);
    std::uniform_int_distribution<int> len(0, 200);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(len(gen)));
        for (auto& x : v) x = dist(gen);
        REQUIRE(apply_moving_average(v, 0, dist(gen)) == v);
    }
}

TEST_CASE("gross_equity_returns: exponentiates mu + e", "[return_models]") {
    CHECK(gross_equity_returns({0.0, 0.1, std::nullopt}, std::vector<double>{0.0, 0.0}).gross_returns ==
          std::vector<double>{1.0, 1.0});
    const auto r = gross_equity_returns({0.045, 0.1, std::nullopt}, std::vector<double>{0.0});
    CHECK(r.gross_returns[0] == Approx(1.04603).epsilon(1e-5));
    CHECK(r.gross_returns[0] == std::exp(0.045));
    CHECK(gross_equity_returns({0.045, 0.1, std::nullopt}, std::vector<double>{-0.045}).gross_returns ==
          std::vector<double>{1.0});
}

TEST_CASE("gross returns are strictly positive", "[return_models][property]") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> mu(-1.0, 1.0);
    std::uniform_real_distribution<double> sigma(0.0, 2.0);
    std::uniform_real_distribution<double> beta(-1.0, 1.0);
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        EquityReturnParams p{mu(gen), sigma(gen), std::nullopt};
        if (trial % 2 == 1) p.mean_reversion = MovingAverage{static_cast<unsigned>(1 + trial % 5), beta(gen)};
        const auto path = equity_return_path(p, 100, trial, trial * 7);
        for (double r : path.gross_returns) {
            REQUIRE(r > 0.0);
            REQUIRE(std::isfinite(r));
        }
    }
}

TEST_CASE("MA(q) errors have variance sigma^2 (1 + q beta^2) after the warm-up", "[return_models][statistical]") {
    const double sigma = 0.2;
    const unsigned q = 2;
    const double beta = -0.5;
    EquityReturnParams p{0.0, sigma, MovingAverage{q, beta}};
    const std::size_t n = 100'000;
    const std::size_t horizon = q + 3;
    double ss = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        RandomStream stream(17, i);
        const auto v = sample_innovations(p, horizon, stream);
        const double e = apply_moving_average(v, q, beta)[horizon - 1];
        s += e;
        ss += e * e;
    }
    const double mean = s / static_cast<double>(n);
    const double var = (ss - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1);
    const double expected = sigma * sigma * (1.0 + q * beta * beta);
    CHECK(std::abs(var / expected - 1.0) <= 0.02);
}

TEST_CASE("EquityReturnParams::validate", "[return_models]") {
    CHECK_NOTHROW(EquityReturnParams{0.045, 0.175, std::nullopt}.validate());
    CHECK_THROWS_AS((EquityReturnParams{0.045, -0.1, std::nullopt}.validate()), ConfigError);
    CHECK_THROWS_AS((EquityReturnParams{NAN, 0.1, std::nullopt}.validate()), ConfigError);
    CHECK_THROWS_AS((EquityReturnParams{0.0, 0.1, MovingAverage{0, 0.5}}.validate()), ConfigError);
    EquityReturnParams no_mr{0.0, 0.1, std::nullopt};
    CHECK(no_mr.lags() == 0);
    CHECK(no_mr.beta() == 0.0);
}
