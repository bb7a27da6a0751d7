#include "fundrisk/engine.hpp"

#include "fundrisk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace fundrisk {

void SimulationConfig::validate() const {
    if (!std::isfinite(initial_assets) || initial_assets < 0.0) {
        throw ConfigError("initial_assets must be finite and >= 0");
    }
    if (!(equity_weight >= 0.0 && equity_weight <= 1.0)) {
        throw ConfigError("equity_weight must lie in [0, 1]");
    }
    equity.validate();
    schedule.validate();
    if (n_paths == 0) {
        throw ConfigError("paths must be >= 1");
    }
    if (safe.horizon() < schedule.horizon()) {
        throw ConfigError("safe return series (" + std::to_string(safe.horizon()) +
                          " periods) is shorter than the cashflow schedule (" +
                          std::to_string(schedule.horizon()) + " periods)");
    }
}

EquityReturnSource lognormal_source(const EquityReturnParams& params, std::uint64_t seed) {
    return [params, seed](std::uint64_t path_index, std::size_t horizon) {
        return equity_return_path(params, horizon, seed, path_index);
    };
}

PathResult simulate_path(const SimulationConfig& config, std::span<const double> equity_returns) {
    const std::size_t horizon = config.horizon();
    if (equity_returns.size() < horizon) {
        throw ConfigError("equity return path shorter than the cashflow schedule");
    }
    const double alpha = config.equity_weight;
    PathResult result;
    result.assets.resize(horizon, 0.0);
    double balance = config.initial_assets;
    for (std::size_t t = 1; t <= horizon; ++t) {
        const double blended = alpha * equity_returns[t - 1] +
                               (1.0 - alpha) * config.safe.gross_returns[t - 1];
        balance = blended * balance - config.schedule.payments[t - 1];
        if (balance < 0.0) {
            result.exhaustion_period = t;
            break;  // remaining assets stay at zero
        }
        result.assets[t - 1] = balance;
    }
    result.terminal_assets = result.assets.back();
    return result;
}

PathResult simulate_path(const SimulationConfig& config, std::uint64_t path_index) {
    const auto path = equity_return_path(config.equity, config.horizon(), config.seed, path_index);
    return simulate_path(config, path.gross_returns);
}

Ensemble::Ensemble(std::size_t n_paths, std::size_t horizon, int start_year)
    : n_paths_(n_paths),
      horizon_(horizon),
      start_year_(start_year),
      assets_(n_paths * horizon, 0.0),
      exhaustion_(n_paths, 0) {}

void Ensemble::store(std::size_t path, const PathResult& result) {
    std::copy(result.assets.begin(), result.assets.end(), assets_.begin() + path * horizon_);
    exhaustion_[path] = result.exhaustion_period.value_or(0);
}

Ensemble simulate_ensemble(const SimulationConfig& config, const RunOptions& options) {
    return simulate_ensemble(config, lognormal_source(config.equity, config.seed), options);
}

Ensemble simulate_ensemble(const SimulationConfig& config, const EquityReturnSource& source,
                           const RunOptions& options) {
    config.validate();
    const std::size_t n = config.n_paths;
    Ensemble ensemble(n, config.horizon(), config.schedule.start_year);

    unsigned workers = options.workers == 0 ? std::thread::hardware_concurrency() : options.workers;
    workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, n));

    // Each worker owns a contiguous block of path indices and writes only to
    // those slots, so the stored ensemble is independent of scheduling.
    auto run_block = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto equity = source(i, config.horizon());
            if (equity.gross_returns.size() < config.horizon()) {
                throw ConfigError("equity return source produced too few periods");
            }
            ensemble.store(i, simulate_path(config, equity.gross_returns));
        }
    };

    if (workers == 1) {
        run_block(0, n);
        return ensemble;
    }

    std::vector<std::thread> threads;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = n * w / workers;
        const std::size_t end = n * (w + 1) / workers;
        threads.emplace_back([&, begin, end] {
            try {
                run_block(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
    return ensemble;
}

std::vector<double> exhaustion_curve(const Ensemble& ensemble) {
    std::vector<std::size_t> first_exhausted(ensemble.horizon() + 1, 0);
    for (std::size_t p = 0; p < ensemble.n_paths(); ++p) {
        ++first_exhausted[ensemble.exhaustion_period(p)];
    }
    std::vector<double> curve(ensemble.horizon());
    std::size_t cumulative = 0;
    const double n = static_cast<double>(ensemble.n_paths());
    for (std::size_t t = 1; t <= ensemble.horizon(); ++t) {
        cumulative += first_exhausted[t];
        curve[t - 1] = static_cast<double>(cumulative) / n;
    }
    return curve;
}

std::map<double, double> surplus_exceedance(const Ensemble& ensemble,
                                            std::span<const double> thresholds_gbp_bn) {
    if (ensemble.n_paths() == 0) {
        throw ConfigError("surplus exceedance needs a non-empty ensemble");
    }
    std::vector<double> terminal(ensemble.n_paths());
    for (std::size_t p = 0; p < ensemble.n_paths(); ++p) {
        terminal[p] = ensemble.terminal_assets(p);
    }
    std::sort(terminal.begin(), terminal.end());
    std::map<double, double> out;
    const double n = static_cast<double>(terminal.size());
    for (double threshold : thresholds_gbp_bn) {
        const auto first_at_or_above = std::lower_bound(terminal.begin(), terminal.end(), threshold);
        out[threshold] = static_cast<double>(terminal.end() - first_at_or_above) / n;
    }
    return out;
}

double nearest_rank(std::span<const double> sorted, double percentile) {
    const double n = static_cast<double>(sorted.size());
    const double exact = percentile * n / 100.0;
    // Snap products like 7 * 100 / 100 that land a hair above an integer.
    const double nearest = std::round(exact);
    const double rank_real =
        std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
    const auto rank = std::clamp<std::size_t>(static_cast<std::size_t>(rank_real), 1, sorted.size());
    return sorted[rank - 1];
}

FanTable quantile_fan(const Ensemble& ensemble, std::span<const double> percentiles) {
    if (percentiles.empty()) {
        throw ConfigError("percentile list is empty");
    }
    for (std::size_t k = 0; k < percentiles.size(); ++k) {
        if (!(percentiles[k] > 0.0 && percentiles[k] < 100.0)) {
            throw ConfigError("percentiles must lie strictly between 0 and 100");
        }
        if (k > 0 && percentiles[k] <= percentiles[k - 1]) {
            throw ConfigError("percentiles must be sorted ascending without duplicates");
        }
    }
    FanTable fan;
    fan.percentiles.assign(percentiles.begin(), percentiles.end());
    fan.values.resize(ensemble.horizon());
    std::vector<double> column(ensemble.n_paths());
    for (std::size_t t = 1; t <= ensemble.horizon(); ++t) {
        for (std::size_t p = 0; p < ensemble.n_paths(); ++p) {
            column[p] = ensemble.assets(p, t);
        }
        std::sort(column.begin(), column.end());
        auto& row = fan.values[t - 1];
        for (double pct : percentiles) {
            row.push_back(nearest_rank(column, pct));
        }
    }
    return fan;
}

double EnsembleStats::exhaustion_by(int year) const {
    if (year < start_year) {
        return 0.0;
    }
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(year - start_year),
                                           exhaustion_prob_by_year.size() - 1);
    return exhaustion_prob_by_year[idx];
}

EnsembleStats summarize(const Ensemble& ensemble, const StatsOptions& options) {
    EnsembleStats stats;
    stats.start_year = ensemble.start_year();
    stats.n_paths = ensemble.n_paths();
    stats.exhaustion_prob_by_year = exhaustion_curve(ensemble);
    stats.surplus_exceedance = surplus_exceedance(ensemble, options.surplus_thresholds);
    stats.fan = quantile_fan(ensemble, options.percentiles);
    return stats;
}

EnsembleStats run_ensemble(const SimulationConfig& config, const StatsOptions& stats,
                           const RunOptions& options) {
    return summarize(simulate_ensemble(config, options), stats);
}

std::vector<SweepCurve> sweep_allocation(const SimulationConfig& base,
                                         std::span<const double> equity_weights,
                                         const RunOptions& options) {
    std::vector<SweepCurve> curves;
    curves.reserve(equity_weights.size());
    for (double alpha : equity_weights) {
        SimulationConfig cfg = base;
        cfg.equity_weight = alpha;
        curves.push_back({alpha, exhaustion_curve(simulate_ensemble(cfg, options))});
    }
    return curves;
}

} // namespace fundrisk
