#include "fundrisk/calibration.hpp"

#include "fundrisk/csv.hpp"
#include "fundrisk/errors.hpp"

#include <algorithm>
#include <cmath>

namespace fundrisk {

std::string_view to_string(MomentMethod method) {
    switch (method) {
    case MomentMethod::unweighted_pooled: return "unweighted-pooled";
    case MomentMethod::gdp_weighted_portfolio: return "gdp-weighted-portfolio";
    }
    return "unknown";
}

MomentMethod parse_moment_method(std::string_view name) {
    if (name == "unweighted-pooled") return MomentMethod::unweighted_pooled;
    if (name == "gdp-weighted-portfolio") return MomentMethod::gdp_weighted_portfolio;
    throw ConfigError("unknown method '" + std::string(name) +
                      "' (expected unweighted-pooled or gdp-weighted-portfolio)");
}

Panel load_panel(const std::filesystem::path& path, const PanelColumns& columns) {
    const auto table = csv::read_file(path);
    auto require = [&](const std::string& name) {
        const auto c = table.column(name);
        if (!c) {
            throw DataError("missing column '" + name + "'", path.string(), 1);
        }
        return *c;
    };
    const auto c_country = require(columns.country);
    const auto c_year = require(columns.year);
    const auto c_ret = require(columns.nominal_total_return);
    const auto c_infl = require(columns.inflation);
    const auto c_pop = require(columns.population);
    const auto c_gdp = require(columns.real_gdp_per_capita);

    Panel panel;
    for (const auto& row : table.rows) {
        CountryYearRecord rec;
        rec.country = c_country < row.cells.size() ? row.cells[c_country] : std::string{};
        if (rec.country.empty()) {
            throw DataError("missing country", path.string(), row.line);
        }
        rec.year = static_cast<int>(csv::parse_integer(row, c_year, columns.year, table.source));
        rec.nominal_total_return =
            csv::parse_optional_double(row, c_ret, columns.nominal_total_return, table.source);
        rec.inflation = csv::parse_optional_double(row, c_infl, columns.inflation, table.source);
        rec.population = csv::parse_optional_double(row, c_pop, columns.population, table.source);
        rec.real_gdp_per_capita =
            csv::parse_optional_double(row, c_gdp, columns.real_gdp_per_capita, table.source);
        if ((rec.nominal_total_return && 1.0 + *rec.nominal_total_return <= 0.0) ||
            (rec.inflation && 1.0 + *rec.inflation <= 0.0)) {
            ++panel.rejected_rows;
            continue;
        }
        panel.records.push_back(std::move(rec));
    }
    return panel;
}

std::optional<double> real_return(const CountryYearRecord& record) {
    if (!record.has_return_data()) {
        return std::nullopt;
    }
    return (1.0 + *record.nominal_total_return) / (1.0 + *record.inflation) - 1.0;
}

std::map<std::string, double> gdp_weights(std::span<const CountryYearRecord> records) {
    std::map<std::string, double> weights;
    double total = 0.0;
    for (const auto& r : records) {
        if (!r.has_weight_data()) continue;
        const double size = *r.population * *r.real_gdp_per_capita;
        weights[r.country] += size;
        total += size;
    }
    if (weights.empty() || !(total > 0.0)) {
        return {};
    }
    for (auto& [country, w] : weights) {
        w /= total;
    }
    return weights;
}

WeightedSeries global_weighted_return_series(std::span<const CountryYearRecord> panel) {
    std::map<int, std::vector<CountryYearRecord>> by_year;
    WeightedSeries series;
    for (const auto& r : panel) {
        if (r.has_return_data() && r.has_weight_data()) {
            by_year[r.year].push_back(r);
        } else {
            by_year.try_emplace(r.year);
            ++series.skipped_records;
        }
    }
    for (const auto& [year, records] : by_year) {
        const auto weights = gdp_weights(records);
        if (weights.empty()) {
            ++series.skipped_years;
            continue;
        }
        double total = 0.0;
        for (const auto& r : records) {
            total += *real_return(r) * weights.at(r.country);
        }
        series.returns.push_back({year, total});
    }
    return series;
}

MomentEstimate estimate_moments(std::span<const double> returns, MomentMethod method) {
    if (returns.size() < 2) {
        throw ConfigError("at least two values are needed to estimate moments");
    }
    const double n = static_cast<double>(returns.size());
    double mean = 0.0;
    for (double r : returns) mean += r;
    mean /= n;
    double ss = 0.0;
    for (double r : returns) ss += (r - mean) * (r - mean);
    MomentEstimate est;
    est.mean_pct = 100.0 * mean;
    est.sd_pct = 100.0 * std::sqrt(ss / (n - 1.0));
    est.n_values = returns.size();
    est.method = method;
    return est;
}

MomentEstimate estimate_panel_moments(std::span<const CountryYearRecord> panel, MomentMethod method) {
    std::vector<double> values;
    int first = 0;
    int last = 0;
    auto track = [&](int year) {
        if (values.empty() || year < first) first = year;
        if (values.empty() || year > last) last = year;
    };
    if (method == MomentMethod::unweighted_pooled) {
        for (const auto& r : panel) {
            if (const auto rr = real_return(r)) {
                track(r.year);
                values.push_back(*rr);
            }
        }
    } else {
        for (const auto& yv : global_weighted_return_series(panel).returns) {
            track(yv.year);
            values.push_back(yv.value);
        }
    }
    auto est = estimate_moments(values, method);
    est.first_year = first;
    est.last_year = last;
    return est;
}

} // namespace fundrisk
