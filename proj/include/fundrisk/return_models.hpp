#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fundrisk {

class RandomStream;

// MA(q) error structure: e_t = v_t + beta * (v_{t-1} + ... + v_{t-q}).
struct MovingAverage {
    unsigned lags = 0;  // q, must be >= 1 when present
    double beta = 0.0;
};

// Log-return model for the equity ("risky") asset, one annual period per step.
//
// `mu` and `sigma` are the mean and standard deviation of the log return
// log R_t. With mean reversion the innovation standard deviation is `sigma`
// as well, so the unconditional variance of the error becomes
// sigma^2 * (1 + q * beta^2).
struct EquityReturnParams {
    double mu = 0.0;
    double sigma = 0.0;
    std::optional<MovingAverage> mean_reversion;

    unsigned lags() const { return mean_reversion ? mean_reversion->lags : 0u; }
    double beta() const { return mean_reversion ? mean_reversion->beta : 0.0; }

    // Throws ConfigError if sigma < 0, a value is non-finite, or
    // mean_reversion is present with zero lags.
    void validate() const;
};

// Per-period gross equity returns R_t^e > 0, t = 1..T.
struct ReturnPath {
    std::vector<double> gross_returns;
};

// Draws `horizon` i.i.d. N(0, sigma^2) innovations from `stream`.
// Throws ConfigError when horizon == 0.
std::vector<double> sample_innovations(const EquityReturnParams& params, std::size_t horizon,
                                       RandomStream& stream);

// Applies the MA(q) filter with pre-sample innovations taken as zero.
// q == 0 returns the input unchanged.
std::vector<double> apply_moving_average(std::span<const double> innovations, unsigned lags,
                                         double beta);

// R_t = exp(mu + e_t).
ReturnPath gross_equity_returns(const EquityReturnParams& params, std::span<const double> errors);

// Full path for (seed, path_index): innovations, MA filter, exponentiation.
ReturnPath equity_return_path(const EquityReturnParams& params, std::size_t horizon,
                              std::uint64_t seed, std::uint64_t path_index);

} // namespace fundrisk
