#include "fundrisk/scenario.hpp"

#include "fundrisk/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fundrisk {

namespace {

std::string trim(std::string_view s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return std::string(s);
}

struct Entry {
    std::string value;
    std::size_t line = 0;
};

[[noreturn]] void fail(std::string_view field, std::size_t line, const std::string& what) {
    std::string msg(field);
    if (line > 0) msg += " (line " + std::to_string(line) + ")";
    throw ConfigError(msg + ": " + what);
}

double to_double(const Entry& e, std::string_view field) {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (e.value.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        fail(field, e.line, "'" + e.value + "' is not a finite number");
    }
    return v;
}

std::uint64_t to_unsigned(const Entry& e, std::string_view field) {
    std::uint64_t v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (e.value.empty() || ec != std::errc{} || ptr != last) {
        fail(field, e.line, "'" + e.value + "' is not a non-negative integer");
    }
    return v;
}

std::vector<std::string> split_names(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in{std::string(text)};
    while (std::getline(in, cur, ',')) {
        auto t = trim(cur);
        if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
}

using Setter = std::function<void(ScenarioFile&, const Entry&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
    static const std::map<std::string, Setter, std::less<>> table{
        {"fund.initial_assets",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             s.initial_assets = to_double(e, f);
             if (s.initial_assets < 0.0) fail(f, e.line, "must be >= 0");
         }},
        {"fund.equity_weight",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             s.equity_weight = to_double(e, f);
             if (s.equity_weight < 0.0 || s.equity_weight > 1.0) fail(f, e.line, "must lie in [0, 1]");
         }},
        {"equity.mu", [](ScenarioFile& s, const Entry& e, std::string_view f) { s.equity.mu = to_double(e, f); }},
        {"equity.sigma",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             s.equity.sigma = to_double(e, f);
             if (s.equity.sigma < 0.0) fail(f, e.line, "must be >= 0");
         }},
        {"equity.ma_lags",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             const auto q = to_unsigned(e, f);
             if (q > 1000) fail(f, e.line, "unreasonably large lag count");
             if (q == 0) {
                 s.equity.mean_reversion.reset();
             } else {
                 s.equity.mean_reversion = MovingAverage{static_cast<unsigned>(q), s.equity.beta()};
             }
         }},
        {"equity.ma_beta",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             const double beta = to_double(e, f);
             // With q = 0 the coefficient has no effect.
             if (s.equity.mean_reversion) {
                 s.equity.mean_reversion->beta = beta;
             }
         }},
        {"bonds.curve_file",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             if (e.value.empty()) fail(f, e.line, "empty path");
             s.curve_file = e.value;
         }},
        {"bonds.curve_layout",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             if (e.value == "long") {
                 s.curve_format.layout = CurveLayout::long_format;
             } else if (e.value == "wide") {
                 s.curve_format.layout = CurveLayout::wide_format;
             } else {
                 fail(f, e.line, "expected 'long' or 'wide'");
             }
         }},
        {"bonds.curve_row", [](ScenarioFile& s, const Entry& e, std::string_view) { s.curve_format.row_label = e.value; }},
        {"bonds.flat_rate_pct", [](ScenarioFile& s, const Entry& e, std::string_view f) { s.flat_rate_pct = to_double(e, f); }},
        {"bonds.rpi_adjustment_pct",
         [](ScenarioFile& s, const Entry& e, std::string_view f) { s.rpi_adjustment_pct = to_double(e, f); }},
        {"cashflows.file",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             if (e.value.empty()) fail(f, e.line, "empty path");
             s.cashflow_file = e.value;
         }},
        {"cashflows.components",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             s.cashflow_components = split_names(e.value);
             if (s.cashflow_components.empty()) fail(f, e.line, "at least one column is required");
         }},
        {"simulation.paths",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             s.n_paths = to_unsigned(e, f);
             if (s.n_paths == 0) fail(f, e.line, "must be >= 1");
         }},
        {"simulation.seed", [](ScenarioFile& s, const Entry& e, std::string_view f) { s.seed = to_unsigned(e, f); }},
        {"simulation.workers",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             const auto w = to_unsigned(e, f);
             if (w > 1024) fail(f, e.line, "too many workers");
             s.workers = static_cast<unsigned>(w);
         }},
        {"output.directory",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             if (e.value.empty()) fail(f, e.line, "empty path");
             s.output_dir = e.value;
         }},
        {"output.surplus_thresholds",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             s.stats.surplus_thresholds = parse_number_list(e.value, f);
         }},
        {"output.percentiles",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             auto p = parse_number_list(e.value, f);
             if (p.empty()) fail(f, e.line, "at least one percentile is required");
             for (std::size_t i = 0; i < p.size(); ++i) {
                 if (!(p[i] > 0.0 && p[i] < 100.0)) fail(f, e.line, "percentiles must lie in (0, 100)");
                 if (i > 0 && p[i] <= p[i - 1]) fail(f, e.line, "percentiles must be strictly ascending");
             }
             s.stats.percentiles = std::move(p);
         }},
        {"output.sweep_alphas",
         [](ScenarioFile& s, const Entry& e, std::string_view f) {
             auto a = parse_number_list(e.value, f);
             if (a.empty()) fail(f, e.line, "at least one weight is required");
             for (double v : a) {
                 if (v < 0.0 || v > 1.0) fail(f, e.line, "weights must lie in [0, 1]");
             }
             s.sweep_alphas = std::move(a);
         }},
    };
    return table;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::filesystem::path& p) {
    return p.is_absolute() ? p : (base / p).lexically_normal();
}

} // namespace

std::vector<double> parse_number_list(std::string_view text, std::string_view field) {
    std::vector<double> out;
    for (const auto& item : split_names(text)) {
        out.push_back(to_double(Entry{item, 0}, field));
    }
    return out;
}

ScenarioFile parse_scenario(std::string_view text, const std::filesystem::path& source) {
    std::map<std::string, Entry, std::less<>> entries;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto comment = raw.find_first_of("#;");
        const std::string line = trim(std::string_view(raw).substr(0, comment));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail("section", line_no, "unterminated section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) fail("entry", line_no, "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (section.empty()) fail(key, line_no, "entry outside of a section");
        const std::string field = section + "." + key;
        if (!setters().contains(field)) fail(field, line_no, "unknown field");
        if (entries.contains(field)) fail(field, line_no, "duplicate field");
        entries[field] = Entry{value, line_no};
    }

    ScenarioFile s;
    s.source = source;
    for (const char* required : {"fund.initial_assets", "fund.equity_weight", "equity.mu",
                                 "equity.sigma", "cashflows.file", "cashflows.components"}) {
        if (!entries.contains(required)) fail(required, 0, "required field is missing");
    }
    if (entries.contains("equity.ma_beta") && !entries.contains("equity.ma_lags")) {
        fail("equity.ma_lags", 0, "required when equity.ma_beta is set");
    }
    if (entries.contains("bonds.curve_file") == entries.contains("bonds.flat_rate_pct")) {
        fail("bonds.curve_file", 0, "exactly one of bonds.curve_file and bonds.flat_rate_pct is required");
    }
    // Fields are applied in key order, except ma_beta which must follow ma_lags.
    for (const auto& [field, setter] : setters()) {
        if (field == "equity.ma_beta") continue;
        if (const auto it = entries.find(field); it != entries.end()) setter(s, it->second, field);
    }
    if (const auto it = entries.find("equity.ma_beta"); it != entries.end()) {
        setters().at("equity.ma_beta")(s, it->second, "equity.ma_beta");
    }
    return s;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("scenario: cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    auto s = parse_scenario(buf.str(), path);
    const auto base = path.parent_path();
    if (s.curve_file) {
        s.curve_file = resolve(base, *s.curve_file);
        if (!std::filesystem::exists(*s.curve_file)) {
            fail("bonds.curve_file", 0, "file not found: " + s.curve_file->string());
        }
    }
    s.cashflow_file = resolve(base, s.cashflow_file);
    if (!std::filesystem::exists(s.cashflow_file)) {
        fail("cashflows.file", 0, "file not found: " + s.cashflow_file.string());
    }
    s.output_dir = resolve(base, s.output_dir);
    return s;
}

SimulationConfig build_config(const ScenarioFile& scenario) {
    SimulationConfig cfg;
    cfg.initial_assets = scenario.initial_assets;
    cfg.equity_weight = scenario.equity_weight;
    cfg.equity = scenario.equity;
    cfg.n_paths = scenario.n_paths;
    cfg.seed = scenario.seed;
    cfg.schedule = load_cashflows(scenario.cashflow_file, scenario.cashflow_components);

    const SpotCurve curve = scenario.curve_file
                                ? load_spot_curve(*scenario.curve_file, scenario.curve_format)
                                : SpotCurve::flat(*scenario.flat_rate_pct, 1, "flat");
    cfg.safe = forward_gross_returns(
        discount_factors(curve, scenario.rpi_adjustment_pct, cfg.schedule.horizon()));
    cfg.validate();
    return cfg;
}

} // namespace fundrisk
