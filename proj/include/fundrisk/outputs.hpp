#pragma once

#include "fundrisk/calibration.hpp"
#include "fundrisk/engine.hpp"
#include "fundrisk/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fundrisk {

// CSV writers. Every number goes through csv::format_number.
void write_fan_csv(std::ostream& out, const EnsembleStats& stats);
void write_exhaustion_csv(std::ostream& out, const EnsembleStats& stats);
void write_surplus_csv(std::ostream& out, const EnsembleStats& stats);
void write_sweep_csv(std::ostream& out, int start_year, std::span<const SweepCurve> curves);
void write_safe_returns_csv(std::ostream& out, const SafeReturnSeries& safe);

std::string fan_svg(const EnsembleStats& stats, const std::string& title);
std::string sweep_svg(int start_year, std::span<const SweepCurve> curves, const std::string& title);

// Headline statistics plus a full echo of the inputs (including the resolved
// bond returns and payment schedule).
std::string summary_json(const ScenarioFile& scenario, const SimulationConfig& config,
                         const EnsembleStats& stats);

std::string moments_json(const MomentEstimate& estimate, const std::filesystem::path& panel,
                         std::size_t rejected_rows);

// Runs the scenario and writes fan.csv, exhaustion.csv, surplus.csv,
// fan.svg and summary.json to scenario.output_dir. Returns the statistics.
EnsembleStats run_scenario(const ScenarioFile& scenario);

// Writes sweep.csv and sweep.svg to scenario.output_dir.
std::vector<SweepCurve> run_sweep(const ScenarioFile& scenario, std::span<const double> alphas);

} // namespace fundrisk
