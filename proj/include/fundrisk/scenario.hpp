#pragma once

#include "fundrisk/engine.hpp"
#include "fundrisk/yield_curve.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fundrisk {

// Everything needed to run one scenario. Relative paths in the file are
// resolved against the scenario file's directory.
//
// Grammar (see docs/scenario-format.md):
//   file    := { line }
//   line    := blank | comment | section | entry
//   comment := ('#' | ';') text
//   section := '[' name ']'
//   entry   := key '=' value [ ('#' | ';') text ]
// Keys are addressed as `section.key`; unknown sections or keys are errors.
struct ScenarioFile {
    std::filesystem::path source;

    double initial_assets = 0.0;
    double equity_weight = 0.0;
    EquityReturnParams equity;

    // Either a curve file or a flat real rate.
    std::optional<std::filesystem::path> curve_file;
    std::optional<double> flat_rate_pct;
    CurveFileFormat curve_format;
    double rpi_adjustment_pct = 0.5;

    std::filesystem::path cashflow_file;
    std::vector<std::string> cashflow_components;

    std::size_t n_paths = 10'000;
    std::uint64_t seed = 20200331;
    unsigned workers = 1;

    std::filesystem::path output_dir = "out";
    StatsOptions stats;
    std::vector<double> sweep_alphas{0.25, 0.35, 0.45, 0.55, 0.65, 0.75};
};

// Parses scenario text. Throws ConfigError whose message starts with the
// failing `section.key` (and line number when known).
ScenarioFile parse_scenario(std::string_view text, const std::filesystem::path& source);

// Reads and parses a scenario file and checks that every referenced file
// exists. Throws ConfigError, or DataError if the file cannot be read.
ScenarioFile load_scenario(const std::filesystem::path& path);

// Loads the curve and cashflow files and assembles a validated config.
SimulationConfig build_config(const ScenarioFile& scenario);

// Comma-separated list of numbers; throws ConfigError naming `field`.
std::vector<double> parse_number_list(std::string_view text, std::string_view field);

} // namespace fundrisk
