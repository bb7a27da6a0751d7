#pragma once

#include "fundrisk/cashflows.hpp"
#include "fundrisk/return_models.hpp"
#include "fundrisk/yield_curve.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fundrisk {

// A closed fund paying `schedule` out of a portfolio rebalanced every year to
// `equity_weight` in equities and the remainder in bonds, with no further
// contributions.
struct SimulationConfig {
    double initial_assets = 0.0;  // A_0, GBP bn
    double equity_weight = 0.0;   // alpha
    EquityReturnParams equity;
    SafeReturnSeries safe;
    CashflowSchedule schedule;
    std::size_t n_paths = 10'000;
    std::uint64_t seed = 0;

    std::size_t horizon() const { return schedule.horizon(); }

    // Throws ConfigError naming the first failing field.
    void validate() const;
};

// Equity gross returns for one path. Must return at least `horizon`
// strictly positive values and depend only on its arguments.
using EquityReturnSource =
    std::function<ReturnPath(std::uint64_t path_index, std::size_t horizon)>;

// The log-normal / MA(q) model driven by (seed, path index) streams.
EquityReturnSource lognormal_source(const EquityReturnParams& params, std::uint64_t seed);

struct PathResult {
    // A_1 .. A_T, clamped at zero once the fund is exhausted.
    std::vector<double> assets;
    // First period t (1-based) whose post-payment balance was negative.
    std::optional<std::size_t> exhaustion_period;
    double terminal_assets = 0.0;
};

// Runs A_t = (alpha R_t^e + (1 - alpha) R_t^f) A_{t-1} - p_t for a given
// equity path.
PathResult simulate_path(const SimulationConfig& config, std::span<const double> equity_returns);

// Same, drawing equity returns from the (config.seed, path_index) stream.
PathResult simulate_path(const SimulationConfig& config, std::uint64_t path_index);

struct RunOptions {
    // Number of worker threads; 0 uses the hardware concurrency. Results do
    // not depend on this value.
    unsigned workers = 1;
};

// Per-path results of an ensemble run, stored densely by path index.
class Ensemble {
public:
    Ensemble(std::size_t n_paths, std::size_t horizon, int start_year);

    std::size_t n_paths() const { return n_paths_; }
    std::size_t horizon() const { return horizon_; }
    int start_year() const { return start_year_; }
    int year_of_period(std::size_t t) const { return start_year_ + static_cast<int>(t) - 1; }

    // Clamped assets of `path` at period t (1-based).
    double assets(std::size_t path, std::size_t t) const {
        return assets_[path * horizon_ + (t - 1)];
    }
    std::span<const double> path_assets(std::size_t path) const {
        return {assets_.data() + path * horizon_, horizon_};
    }
    // 0 when the path never ran out of money.
    std::size_t exhaustion_period(std::size_t path) const { return exhaustion_[path]; }
    double terminal_assets(std::size_t path) const { return assets_[path * horizon_ + horizon_ - 1]; }

    void store(std::size_t path, const PathResult& result);

private:
    std::size_t n_paths_;
    std::size_t horizon_;
    int start_year_;
    std::vector<double> assets_;
    std::vector<std::size_t> exhaustion_;
};

Ensemble simulate_ensemble(const SimulationConfig& config, const RunOptions& options = {});
Ensemble simulate_ensemble(const SimulationConfig& config, const EquityReturnSource& source,
                           const RunOptions& options = {});

// Cumulative fraction of paths exhausted at or before each period.
std::vector<double> exhaustion_curve(const Ensemble& ensemble);

// Fraction of paths whose (clamped) terminal assets are >= each threshold.
// Exhausted paths end at 0.
std::map<double, double> surplus_exceedance(const Ensemble& ensemble,
                                            std::span<const double> thresholds_gbp_bn);

struct FanTable {
    std::vector<double> percentiles;
    // values[t-1][k]: percentile k of clamped assets at period t.
    std::vector<std::vector<double>> values;
};

// Nearest-rank percentile of sorted data: element ceil(p/100 * n), 1-based.
double nearest_rank(std::span<const double> sorted, double percentile);

// Throws ConfigError on an empty list or a percentile outside (0, 100).
FanTable quantile_fan(const Ensemble& ensemble, std::span<const double> percentiles);

struct StatsOptions {
    std::vector<double> surplus_thresholds{50.0, 100.0, 200.0, 400.0};
    std::vector<double> percentiles{5.0, 25.0, 50.0, 75.0, 95.0};
};

struct EnsembleStats {
    int start_year = 0;
    std::size_t n_paths = 0;
    std::vector<double> exhaustion_prob_by_year;
    std::map<double, double> surplus_exceedance;
    FanTable fan;

    int end_year() const {
        return start_year + static_cast<int>(exhaustion_prob_by_year.size()) - 1;
    }
    // Probability of running out of money before the final payment.
    double overall_exhaustion() const { return exhaustion_prob_by_year.back(); }
    // Cumulative exhaustion probability at the end of calendar `year`.
    double exhaustion_by(int year) const;
};

EnsembleStats summarize(const Ensemble& ensemble, const StatsOptions& options = {});

EnsembleStats run_ensemble(const SimulationConfig& config, const StatsOptions& stats = {},
                           const RunOptions& options = {});

struct SweepCurve {
    double equity_weight = 0.0;
    std::vector<double> exhaustion_prob_by_year;
};

// One ensemble per equity weight, all with the base seed so that every
// weight sees the same equity draws.
std::vector<SweepCurve> sweep_allocation(const SimulationConfig& base,
                                         std::span<const double> equity_weights,
                                         const RunOptions& options = {});

} // namespace fundrisk
