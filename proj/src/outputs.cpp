#include "fundrisk/outputs.hpp"

#include "fundrisk/csv.hpp"
#include "fundrisk/errors.hpp"
#include "fundrisk/svg_chart.hpp"

#include <json.hpp>

#include <fstream>
#include <ostream>

namespace fundrisk {

namespace {

using csv::format_number;
using nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write output file", path.string());
    }
    out << text;
}

template <typename Writer>
void write_with(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw DataError("cannot write output file", path.string());
    }
    writer(out);
}

std::string percentile_label(double p) { return "p" + format_number(p); }

} // namespace

void write_fan_csv(std::ostream& out, const EnsembleStats& stats) {
    out << "year";
    for (double p : stats.fan.percentiles) out << ',' << percentile_label(p);
    out << '\n';
    for (std::size_t t = 0; t < stats.fan.values.size(); ++t) {
        out << stats.start_year + static_cast<int>(t);
        for (double v : stats.fan.values[t]) out << ',' << format_number(v);
        out << '\n';
    }
}

void write_exhaustion_csv(std::ostream& out, const EnsembleStats& stats) {
    out << "year,exhaustion_probability\n";
    for (std::size_t t = 0; t < stats.exhaustion_prob_by_year.size(); ++t) {
        out << stats.start_year + static_cast<int>(t) << ','
            << format_number(stats.exhaustion_prob_by_year[t]) << '\n';
    }
}

void write_surplus_csv(std::ostream& out, const EnsembleStats& stats) {
    out << "threshold_gbp_bn,probability\n";
    for (const auto& [threshold, prob] : stats.surplus_exceedance) {
        out << format_number(threshold) << ',' << format_number(prob) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, int start_year, std::span<const SweepCurve> curves) {
    out << "year";
    for (const auto& c : curves) out << ",alpha_" << format_number(c.equity_weight);
    out << '\n';
    const std::size_t horizon = curves.empty() ? 0 : curves.front().exhaustion_prob_by_year.size();
    for (std::size_t t = 0; t < horizon; ++t) {
        out << start_year + static_cast<int>(t);
        for (const auto& c : curves) out << ',' << format_number(c.exhaustion_prob_by_year[t]);
        out << '\n';
    }
}

void write_safe_returns_csv(std::ostream& out, const SafeReturnSeries& safe) {
    out << "period,discount_factor,forward_gross_return\n";
    for (std::size_t t = 1; t <= safe.horizon(); ++t) {
        out << t << ',' << format_number(safe.discount_factors[t]) << ','
            << format_number(safe.gross_returns[t - 1]) << '\n';
    }
}

std::string fan_svg(const EnsembleStats& stats, const std::string& title) {
    SvgChart chart(title, "Year", "Fund assets (GBP bn, real)");
    const auto& pcts = stats.fan.percentiles;
    auto column = [&](std::size_t k) {
        std::vector<Point> pts;
        for (std::size_t t = 0; t < stats.fan.values.size(); ++t) {
            pts.push_back({static_cast<double>(stats.start_year + static_cast<int>(t)),
                           stats.fan.values[t][k]});
        }
        return pts;
    };
    // Bands between symmetric pairs, outermost first.
    const std::size_t n = pcts.size();
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double opacity = 0.15 + 0.2 * static_cast<double>(k);
        chart.add_band(column(k), column(n - 1 - k), "#1f5fbf", opacity,
                       percentile_label(pcts[k]) + "-" + percentile_label(pcts[n - 1 - k]));
    }
    if (n % 2 == 1) {
        chart.add_line(column(n / 2), "#0b2a5c", 2.0, percentile_label(pcts[n / 2]));
    }
    chart.include_y(0.0, 0.0);
    return chart.render();
}

std::string sweep_svg(int start_year, std::span<const SweepCurve> curves, const std::string& title) {
    SvgChart chart(title, "Year", "Paths exhausted");
    chart.set_y_as_percent(true);
    chart.include_y(0.0, 1.0);
    for (std::size_t i = 0; i < curves.size(); ++i) {
        std::vector<Point> pts;
        const auto& probs = curves[i].exhaustion_prob_by_year;
        for (std::size_t t = 0; t < probs.size(); ++t) {
            pts.push_back({static_cast<double>(start_year + static_cast<int>(t)), probs[t]});
        }
        chart.add_line(std::move(pts), series_colour(i, curves.size()), 1.5,
                       "equities " + format_number(100.0 * curves[i].equity_weight) + "%");
    }
    return chart.render();
}

std::string summary_json(const ScenarioFile& scenario, const SimulationConfig& config,
                         const EnsembleStats& stats) {
    ordered_json j;
    j["scenario_file"] = scenario.source.string();

    ordered_json params;
    params["initial_assets_gbp_bn"] = config.initial_assets;
    params["equity_weight"] = config.equity_weight;
    params["equity"] = {
        {"mu", config.equity.mu},
        {"sigma", config.equity.sigma},
        {"ma_lags", config.equity.lags()},
        {"ma_beta", config.equity.beta()},
    };
    ordered_json bonds;
    if (scenario.curve_file) {
        bonds["curve_file"] = scenario.curve_file->string();
        bonds["curve_layout"] =
            scenario.curve_format.layout == CurveLayout::long_format ? "long" : "wide";
        bonds["curve_row"] = scenario.curve_format.row_label;
    } else {
        bonds["flat_rate_pct"] = *scenario.flat_rate_pct;
    }
    bonds["rpi_adjustment_pct"] = scenario.rpi_adjustment_pct;
    bonds["gross_returns"] = config.safe.gross_returns;
    params["bonds"] = bonds;
    params["cashflows"] = {
        {"file", scenario.cashflow_file.string()},
        {"components", scenario.cashflow_components},
        {"start_year", config.schedule.start_year},
        {"end_year", config.schedule.end_year()},
        {"payments_gbp_bn", config.schedule.payments},
    };
    params["paths"] = config.n_paths;
    params["seed"] = config.seed;
    params["surplus_thresholds_gbp_bn"] = scenario.stats.surplus_thresholds;
    params["percentiles"] = scenario.stats.percentiles;
    j["parameters"] = params;

    ordered_json results;
    results["overall_exhaustion_probability"] = stats.overall_exhaustion();
    results["first_year"] = stats.start_year;
    results["final_year"] = stats.end_year();
    ordered_json milestones = ordered_json::object();
    for (int year = (stats.start_year / 10 + 1) * 10; year <= stats.end_year(); year += 10) {
        milestones[std::to_string(year)] = stats.exhaustion_by(year);
    }
    results["exhaustion_probability_by_decade"] = milestones;
    ordered_json surplus = ordered_json::array();
    for (const auto& [threshold, prob] : stats.surplus_exceedance) {
        surplus.push_back({{"threshold_gbp_bn", threshold}, {"probability", prob}});
    }
    results["surplus_exceedance"] = surplus;
    ordered_json terminal = ordered_json::object();
    for (std::size_t k = 0; k < stats.fan.percentiles.size(); ++k) {
        terminal[percentile_label(stats.fan.percentiles[k])] = stats.fan.values.back()[k];
    }
    results["terminal_assets_percentiles_gbp_bn"] = terminal;
    j["results"] = results;
    return j.dump(2) + "\n";
}

std::string moments_json(const MomentEstimate& estimate, const std::filesystem::path& panel,
                         std::size_t rejected_rows) {
    ordered_json j;
    j["panel_file"] = panel.string();
    j["method"] = std::string(to_string(estimate.method));
    j["mean_pct"] = estimate.mean_pct;
    j["sd_pct"] = estimate.sd_pct;
    j["n_values"] = estimate.n_values;
    j["first_year"] = estimate.first_year;
    j["last_year"] = estimate.last_year;
    j["rejected_rows"] = rejected_rows;
    return j.dump(2) + "\n";
}

EnsembleStats run_scenario(const ScenarioFile& scenario) {
    const auto config = build_config(scenario);
    const auto stats = run_ensemble(config, scenario.stats, RunOptions{scenario.workers});
    const auto& dir = scenario.output_dir;
    std::filesystem::create_directories(dir);
    write_with(dir / "fan.csv", [&](std::ostream& o) { write_fan_csv(o, stats); });
    write_with(dir / "exhaustion.csv", [&](std::ostream& o) { write_exhaustion_csv(o, stats); });
    write_with(dir / "surplus.csv", [&](std::ostream& o) { write_surplus_csv(o, stats); });
    write_text(dir / "fan.svg", fan_svg(stats, "Projected distribution of fund assets"));
    write_text(dir / "summary.json", summary_json(scenario, config, stats));
    return stats;
}

std::vector<SweepCurve> run_sweep(const ScenarioFile& scenario, std::span<const double> alphas) {
    if (alphas.empty()) {
        throw ConfigError("alphas: at least one equity weight is required");
    }
    for (double a : alphas) {
        if (!(a >= 0.0 && a <= 1.0)) {
            throw ConfigError("alphas: equity weights must lie in [0, 1]");
        }
    }
    const auto config = build_config(scenario);
    const auto curves = sweep_allocation(config, alphas, RunOptions{scenario.workers});
    const auto& dir = scenario.output_dir;
    std::filesystem::create_directories(dir);
    write_with(dir / "sweep.csv", [&](std::ostream& o) {
        write_sweep_csv(o, config.schedule.start_year, curves);
    });
    write_text(dir / "sweep.svg", sweep_svg(config.schedule.start_year, curves,
                                             "Share of paths with the fund exhausted"));
    return curves;
}

} // namespace fundrisk
