#include "fundrisk/cli.hpp"

#include "fundrisk/calibration.hpp"
#include "fundrisk/csv.hpp"
#include "fundrisk/errors.hpp"
#include "fundrisk/outputs.hpp"
#include "fundrisk/scenario.hpp"
#include "fundrisk/yield_curve.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace fundrisk {

namespace {

struct GlobalFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<std::string> out;
    std::optional<unsigned> workers;
};

ScenarioFile scenario_with_overrides(const std::string& path, const GlobalFlags& flags) {
    auto s = load_scenario(path);
    if (flags.seed) s.seed = *flags.seed;
    if (flags.paths) {
        if (*flags.paths == 0) throw ConfigError("--paths: must be >= 1");
        s.n_paths = *flags.paths;
    }
    if (flags.out) s.output_dir = *flags.out;
    if (flags.workers) s.workers = *flags.workers;
    return s;
}

void print_headline(std::ostream& out, const ScenarioFile& s, const EnsembleStats& stats) {
    out << "paths: " << stats.n_paths << ", seed: " << s.seed << "\n"
        << "overall exhaustion probability (" << stats.end_year()
        << "): " << csv::format_number(stats.overall_exhaustion()) << "\n";
    for (const auto& [threshold, prob] : stats.surplus_exceedance) {
        out << "P(terminal assets >= " << csv::format_number(threshold)
            << " bn): " << csv::format_number(prob) << "\n";
    }
    out << "outputs written to " << s.output_dir.string() << "\n";
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Monte Carlo default and surplus risk for a closed defined-benefit fund", "fundrisk"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalFlags flags;
    std::uint64_t seed = 0;
    std::size_t paths = 0;
    std::string out_dir;
    unsigned workers = 1;
    auto* seed_opt = app.add_option("--seed", seed, "Override the scenario's random seed");
    auto* paths_opt = app.add_option("--paths", paths, "Override the number of simulated paths");
    auto* out_opt = app.add_option("--out", out_dir, "Output directory");
    auto* workers_opt =
        app.add_option("--workers", workers, "Worker threads (0 = all cores); results do not change");

    std::string scenario_path;
    auto* simulate = app.add_subcommand("simulate", "Run one scenario and write fan/exhaustion/surplus outputs");
    simulate->add_option("scenario", scenario_path, "Scenario file")->required();

    auto* sweep = app.add_subcommand("sweep", "Exhaustion curves across equity weights");
    std::string alphas_text;
    sweep->add_option("scenario", scenario_path, "Scenario file")->required();
    sweep->add_option("--alphas", alphas_text, "Comma-separated equity weights (default: scenario's sweep_alphas)");

    auto* estimate = app.add_subcommand("estimate-returns", "Equity return moments from a macrohistory panel");
    std::string panel_path;
    std::string method_name;
    std::vector<std::string> column_map;
    estimate->add_option("panel", panel_path, "Panel CSV")->required();
    estimate->add_option("--method", method_name, "unweighted-pooled or gdp-weighted-portfolio")->required();
    estimate->add_option("--column", column_map,
                         "Column remapping field=name; fields: country, year, eq_tr, inflation, population, rgdppc");

    auto* yield = app.add_subcommand("yield", "Print discount factors and forward bond returns as CSV");
    std::string curve_path;
    double delta = 0.5;
    std::size_t horizon = 0;
    std::string layout = "long";
    std::string row_label;
    yield->add_option("curve", curve_path, "Spot curve CSV")->required();
    yield->add_option("--delta", delta, "RPI adjustment in percentage points")->required();
    yield->add_option("--horizon", horizon, "Number of periods (default: last quoted maturity)");
    yield->add_option("--layout", layout, "long or wide")->check(CLI::IsMember({"long", "wide"}));
    yield->add_option("--row", row_label, "Wide layout: label of the curve row (default: last)");

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    }
    if (*seed_opt) flags.seed = seed;
    if (*paths_opt) flags.paths = paths;
    if (*out_opt) flags.out = out_dir;
    if (*workers_opt) flags.workers = workers;

    try {
        if (simulate->parsed()) {
            const auto s = scenario_with_overrides(scenario_path, flags);
            const auto stats = run_scenario(s);
            print_headline(out, s, stats);
        } else if (sweep->parsed()) {
            const auto s = scenario_with_overrides(scenario_path, flags);
            const auto alphas = alphas_text.empty() ? s.sweep_alphas : parse_number_list(alphas_text, "--alphas");
            const auto curves = run_sweep(s, alphas);
            for (const auto& c : curves) {
                out << "alpha " << csv::format_number(c.equity_weight) << ": exhaustion "
                    << csv::format_number(c.exhaustion_prob_by_year.back()) << "\n";
            }
            out << "outputs written to " << s.output_dir.string() << "\n";
        } else if (estimate->parsed()) {
            const auto method = parse_moment_method(method_name);
            PanelColumns cols;
            for (const auto& mapping : column_map) {
                const auto eq = mapping.find('=');
                if (eq == std::string::npos) throw ConfigError("--column: expected field=name, got '" + mapping + "'");
                const auto field = mapping.substr(0, eq);
                const auto name = mapping.substr(eq + 1);
                if (field == "country") cols.country = name;
                else if (field == "year") cols.year = name;
                else if (field == "eq_tr") cols.nominal_total_return = name;
                else if (field == "inflation") cols.inflation = name;
                else if (field == "population") cols.population = name;
                else if (field == "rgdppc") cols.real_gdp_per_capita = name;
                else throw ConfigError("--column: unknown field '" + field + "'");
            }
            const auto panel = load_panel(panel_path, cols);
            const auto est = estimate_panel_moments(panel.records, method);
            out << "method: " << to_string(method) << "\n"
                << "years: " << est.first_year << "-" << est.last_year << " (" << est.n_values << " values)\n"
                << "mean: " << csv::format_number(est.mean_pct) << "%\n"
                << "sd: " << csv::format_number(est.sd_pct) << "%\n";
            if (panel.rejected_rows > 0) {
                out << "rejected rows: " << panel.rejected_rows << "\n";
            }
            const std::filesystem::path dir = flags.out.value_or(".");
            std::filesystem::create_directories(dir);
            std::ofstream f(dir / "moments.json", std::ios::binary);
            if (!f) throw DataError("cannot write output file", (dir / "moments.json").string());
            f << moments_json(est, panel_path, panel.rejected_rows);
        } else if (yield->parsed()) {
            CurveFileFormat fmt;
            fmt.layout = layout == "wide" ? CurveLayout::wide_format : CurveLayout::long_format;
            fmt.row_label = row_label;
            const auto curve = load_spot_curve(curve_path, fmt);
            const std::size_t periods =
                horizon > 0 ? horizon : static_cast<std::size_t>(std::max(1, curve.points().back().maturity_years));
            const auto safe = forward_gross_returns(discount_factors(curve, delta, periods));
            write_safe_returns_csv(out, safe);
        }
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return exit_data_error;
    } catch (const NumericDomainError& e) {
        err << "data error: " << e.what() << "\n";
        return exit_data_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "data error: " << e.what() << "\n";
        return exit_data_error;
    }
    return exit_ok;
}

} // namespace fundrisk
