#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fundrisk {

// One country-year of a macrohistory panel. Returns and inflation are
// fractions (0.05 == 5%).
struct CountryYearRecord {
    std::string country;
    int year = 0;
    std::optional<double> nominal_total_return;
    std::optional<double> inflation;
    std::optional<double> population;
    std::optional<double> real_gdp_per_capita;

    bool has_return_data() const { return nominal_total_return && inflation; }
    bool has_weight_data() const { return population && real_gdp_per_capita; }
};

enum class MomentMethod { unweighted_pooled, gdp_weighted_portfolio };

std::string_view to_string(MomentMethod method);
// Throws ConfigError for an unknown name.
MomentMethod parse_moment_method(std::string_view name);

struct MomentEstimate {
    double mean_pct = 0.0;
    double sd_pct = 0.0;
    std::size_t n_values = 0;  // country-years (pooled) or years (portfolio)
    MomentMethod method = MomentMethod::unweighted_pooled;
    int first_year = 0;
    int last_year = 0;
};

// Column names of the panel file; defaults follow the public macrohistory
// database layout.
struct PanelColumns {
    std::string country = "country";
    std::string year = "year";
    std::string nominal_total_return = "eq_tr";
    std::string inflation = "inflation";
    std::string population = "population";
    std::string real_gdp_per_capita = "rgdppc";
};

struct Panel {
    std::vector<CountryYearRecord> records;
    // Rows dropped at load because 1 + R <= 0 or 1 + pi <= 0.
    std::size_t rejected_rows = 0;
};

// Throws DataError with the offending line for malformed rows.
Panel load_panel(const std::filesystem::path& path, const PanelColumns& columns = {});

// (1 + R) / (1 + pi) - 1, or nullopt when either input is missing.
std::optional<double> real_return(const CountryYearRecord& record);

// GDP weights N * rgdp / sum(N * rgdp) over the records with complete data.
// Records are expected to share one year. Empty when none is complete.
std::map<std::string, double> gdp_weights(std::span<const CountryYearRecord> records);

struct YearValue {
    int year = 0;
    double value = 0.0;
};

struct WeightedSeries {
    std::vector<YearValue> returns;
    std::size_t skipped_years = 0;    // years with no complete country record
    std::size_t skipped_records = 0;  // incomplete country-years left out
};

// Per-year GDP-weighted average of real returns across countries with both
// return and weight data in that year; weights renormalise over whoever is
// present.
WeightedSeries global_weighted_return_series(std::span<const CountryYearRecord> panel);

// Arithmetic mean and sample (n - 1) standard deviation, in percent, of
// fractional returns. Throws ConfigError with fewer than two values.
MomentEstimate estimate_moments(std::span<const double> returns, MomentMethod method);

// Full pipeline on a loaded panel for either method.
MomentEstimate estimate_panel_moments(std::span<const CountryYearRecord> panel, MomentMethod method);

} // namespace fundrisk
