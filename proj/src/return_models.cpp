#include "fundrisk/return_models.hpp"

#include "fundrisk/errors.hpp"
#include "fundrisk/random_stream.hpp"

#include <cmath>

namespace fundrisk {

void EquityReturnParams::validate() const {
    if (!std::isfinite(mu)) {
        throw ConfigError("equity mu must be finite");
    }
    if (!std::isfinite(sigma) || sigma < 0.0) {
        throw ConfigError("equity sigma must be finite and >= 0");
    }
    if (mean_reversion) {
        if (mean_reversion->lags == 0) {
            throw ConfigError("mean reversion requires at least one lag");
        }
        if (!std::isfinite(mean_reversion->beta)) {
            throw ConfigError("mean reversion beta must be finite");
        }
    }
}

std::vector<double> sample_innovations(const EquityReturnParams& params, std::size_t horizon,
                                       RandomStream& stream) {
    if (horizon == 0) {
        throw ConfigError("empty horizon: at least one period is required");
    }
    std::vector<double> out(horizon);
    for (auto& v : out) {
        v = params.sigma * stream.normal();
    }
    return out;
}

std::vector<double> apply_moving_average(std::span<const double> innovations, unsigned lags,
                                         double beta) {
    std::vector<double> out(innovations.begin(), innovations.end());
    if (lags == 0) {
        return out;
    }
    for (std::size_t t = 0; t < innovations.size(); ++t) {
        double lagged = 0.0;
        for (std::size_t i = 1; i <= lags && i <= t; ++i) {
            lagged += innovations[t - i];
        }
        out[t] = innovations[t] + beta * lagged;
    }
    return out;
}

ReturnPath gross_equity_returns(const EquityReturnParams& params, std::span<const double> errors) {
    ReturnPath path;
    path.gross_returns.reserve(errors.size());
    for (double e : errors) {
        path.gross_returns.push_back(std::exp(params.mu + e));
    }
    return path;
}

ReturnPath equity_return_path(const EquityReturnParams& params, std::size_t horizon,
                              std::uint64_t seed, std::uint64_t path_index) {
    RandomStream stream(seed, path_index);
    const auto innovations = sample_innovations(params, horizon, stream);
    const auto errors = apply_moving_average(innovations, params.lags(), params.beta());
    return gross_equity_returns(params, errors);
}

} // namespace fundrisk
