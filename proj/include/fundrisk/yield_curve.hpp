#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fundrisk {

struct SpotPoint {
    int maturity_years = 0;
    double real_spot_rate_pct = 0.0;
};

// Real (inflation-adjusted) zero-coupon spot rates by whole-year maturity.
// Maturities are strictly increasing. Between quoted maturities the rate is
// interpolated linearly; outside the quoted range the nearest rate is held
// flat. DR_0 is 1 by construction, so the maturity-0 rate never enters the
// discount factors.
class SpotCurve {
public:
    SpotCurve(std::vector<SpotPoint> points, std::string label = {});

    static SpotCurve flat(double rate_pct, int last_maturity, std::string label = {});

    double rate_at(int maturity_years) const;

    const std::vector<SpotPoint>& points() const { return points_; }
    const std::string& label() const { return label_; }

private:
    std::vector<SpotPoint> points_;
    std::string label_;
};

// Deterministic per-period gross returns of the bond ("safe") asset.
// discount_factors has T + 1 entries (DR_0 .. DR_T, DR_0 == 1) and
// gross_returns has T entries where gross_returns[t-1] = DR_t / DR_{t-1}.
struct SafeReturnSeries {
    std::vector<double> gross_returns;
    std::vector<double> discount_factors;

    std::size_t horizon() const { return gross_returns.size(); }

    // Constant gross return every period (DR_t = r^t).
    static SafeReturnSeries constant(double gross_return, std::size_t horizon);
};

// DR_t = (1 + (R_t^s + delta) / 100)^t for t = 0..horizon.
// `rpi_adjustment_pct` is the CPI/RPI wedge in percentage points.
std::vector<double> discount_factors(const SpotCurve& curve, double rpi_adjustment_pct,
                                     std::size_t horizon);

// Forward gross returns from cumulative discount factors. Throws
// NumericDomainError on a non-positive or non-finite factor, or if
// DR_0 != 1.
SafeReturnSeries forward_gross_returns(std::span<const double> discount_factors);

enum class CurveLayout {
    // Header `maturity_years,real_spot_rate_pct`, one row per maturity.
    long_format,
    // Bank-of-England style: first column is a row label (usually a date),
    // remaining header cells are maturities in years, one row per curve date.
    // The selected row is flattened to one point per whole-year maturity;
    // fractional maturities and empty cells are dropped.
    wide_format,
};

struct CurveFileFormat {
    CurveLayout layout = CurveLayout::long_format;
    // Wide layout only: label of the row to use; empty selects the last row.
    std::string row_label;
};

// Throws DataError (parse problems, with line numbers; non-monotone
// maturities) or ConfigError (empty curve).
SpotCurve load_spot_curve(const std::filesystem::path& path, const CurveFileFormat& format = {});

} // namespace fundrisk
