#include "fundrisk/yield_curve.hpp"

#include "fundrisk/csv.hpp"
#include "fundrisk/errors.hpp"

#include <cmath>
#include <utility>

namespace fundrisk {

SpotCurve::SpotCurve(std::vector<SpotPoint> points, std::string label)
    : points_(std::move(points)), label_(std::move(label)) {
    if (points_.empty()) {
        throw ConfigError("spot curve has no points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].maturity_years < 0) {
            throw ConfigError("spot curve maturity must be >= 0");
        }
        if (!std::isfinite(points_[i].real_spot_rate_pct)) {
            throw ConfigError("spot curve rate must be finite");
        }
        if (i > 0 && points_[i].maturity_years <= points_[i - 1].maturity_years) {
            throw ConfigError("spot curve maturities must be strictly increasing (maturity " +
                              std::to_string(points_[i].maturity_years) + ")");
        }
    }
}

SpotCurve SpotCurve::flat(double rate_pct, int last_maturity, std::string label) {
    std::vector<SpotPoint> pts;
    for (int m = 1; m <= last_maturity; ++m) {
        pts.push_back({m, rate_pct});
    }
    return SpotCurve(std::move(pts), std::move(label));
}

double SpotCurve::rate_at(int maturity_years) const {
    if (maturity_years <= points_.front().maturity_years) {
        return points_.front().real_spot_rate_pct;
    }
    if (maturity_years >= points_.back().maturity_years) {
        return points_.back().real_spot_rate_pct;
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        const auto& hi = points_[i];
        if (maturity_years <= hi.maturity_years) {
            const auto& lo = points_[i - 1];
            const double w = static_cast<double>(maturity_years - lo.maturity_years) /
                             static_cast<double>(hi.maturity_years - lo.maturity_years);
            return lo.real_spot_rate_pct + w * (hi.real_spot_rate_pct - lo.real_spot_rate_pct);
        }
    }
    return points_.back().real_spot_rate_pct;
}

SafeReturnSeries SafeReturnSeries::constant(double gross_return, std::size_t horizon) {
    SafeReturnSeries s;
    s.gross_returns.assign(horizon, gross_return);
    s.discount_factors.reserve(horizon + 1);
    s.discount_factors.push_back(1.0);
    for (std::size_t t = 1; t <= horizon; ++t) {
        s.discount_factors.push_back(std::pow(gross_return, static_cast<double>(t)));
    }
    return s;
}

std::vector<double> discount_factors(const SpotCurve& curve, double rpi_adjustment_pct,
                                     std::size_t horizon) {
    if (!std::isfinite(rpi_adjustment_pct)) {
        throw ConfigError("RPI adjustment must be finite");
    }
    std::vector<double> out;
    out.reserve(horizon + 1);
    out.push_back(1.0);
    for (std::size_t t = 1; t <= horizon; ++t) {
        const double rate = curve.rate_at(static_cast<int>(t)) + rpi_adjustment_pct;
        out.push_back(std::pow(1.0 + rate / 100.0, static_cast<double>(t)));
    }
    return out;
}

SafeReturnSeries forward_gross_returns(std::span<const double> discount_factors) {
    if (discount_factors.empty()) {
        throw NumericDomainError("discount factor series is empty");
    }
    for (std::size_t t = 0; t < discount_factors.size(); ++t) {
        const double df = discount_factors[t];
        if (!std::isfinite(df) || df <= 0.0) {
            throw NumericDomainError("discount factor at t=" + std::to_string(t) +
                                     " is not strictly positive");
        }
    }
    if (discount_factors.front() != 1.0) {
        throw NumericDomainError("discount factor at t=0 must equal 1");
    }
    SafeReturnSeries s;
    s.discount_factors.assign(discount_factors.begin(), discount_factors.end());
    s.gross_returns.reserve(discount_factors.size() - 1);
    for (std::size_t t = 1; t < discount_factors.size(); ++t) {
        s.gross_returns.push_back(discount_factors[t] / discount_factors[t - 1]);
    }
    return s;
}

namespace {

std::vector<SpotPoint> read_long(const csv::Table& table) {
    const auto mat_col = table.column("maturity_years");
    const auto rate_col = table.column("real_spot_rate_pct");
    if (!mat_col || !rate_col) {
        throw DataError("expected header 'maturity_years,real_spot_rate_pct'",
                        table.source.string(), 1);
    }
    std::vector<SpotPoint> pts;
    for (const auto& row : table.rows) {
        const auto m = csv::parse_integer(row, *mat_col, "maturity_years", table.source);
        const double r = csv::parse_double(row, *rate_col, "real_spot_rate_pct", table.source);
        if (m < 0) {
            throw DataError("maturity must be >= 0", table.source.string(), row.line);
        }
        if (!pts.empty() && m <= pts.back().maturity_years) {
            throw DataError("maturities must be strictly increasing (got " + std::to_string(m) +
                                " after " + std::to_string(pts.back().maturity_years) + ")",
                            table.source.string(), row.line);
        }
        pts.push_back({static_cast<int>(m), r});
    }
    return pts;
}

std::vector<SpotPoint> read_wide(const csv::Table& table, const std::string& row_label) {
    if (table.rows.empty()) {
        throw DataError("wide curve file has no data rows", table.source.string());
    }
    const csv::Row* chosen = &table.rows.back();
    if (!row_label.empty()) {
        chosen = nullptr;
        for (const auto& row : table.rows) {
            if (!row.cells.empty() && row.cells.front() == row_label) {
                chosen = &row;
                break;
            }
        }
        if (chosen == nullptr) {
            throw DataError("no row labelled '" + row_label + "'", table.source.string());
        }
    }
    std::vector<SpotPoint> pts;
    for (std::size_t c = 1; c < table.header.size(); ++c) {
        csv::Row header_row{1, table.header};
        const double maturity = csv::parse_double(header_row, c, "maturity header", table.source);
        if (maturity < 0.0 || maturity != std::floor(maturity)) {
            continue;
        }
        const auto rate = csv::parse_optional_double(*chosen, c, table.header[c], table.source);
        if (!rate) {
            continue;
        }
        const int m = static_cast<int>(maturity);
        if (!pts.empty() && m <= pts.back().maturity_years) {
            throw DataError("maturity columns must be strictly increasing", table.source.string(),
                            1);
        }
        pts.push_back({m, *rate});
    }
    return pts;
}

} // namespace

SpotCurve load_spot_curve(const std::filesystem::path& path, const CurveFileFormat& format) {
    const auto table = csv::read_file(path);
    auto pts = format.layout == CurveLayout::long_format ? read_long(table)
                                                         : read_wide(table, format.row_label);
    if (pts.empty()) {
        throw ConfigError(path.string() + ": spot curve has no points");
    }
    std::string label = path.filename().string();
    if (format.layout == CurveLayout::wide_format && !format.row_label.empty()) {
        label += " [" + format.row_label + "]";
    }
    return SpotCurve(std::move(pts), std::move(label));
}

} // namespace fundrisk
