#pragma once

#include <string>
#include <vector>

namespace fundrisk {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// Minimal self-contained SVG line/band chart. Output depends only on the
// data added, with coordinates printed at fixed precision.
class SvgChart {
public:
    SvgChart(std::string title, std::string x_label, std::string y_label);

    // Shaded area between `lower` and `upper` (same x values).
    void add_band(const std::vector<Point>& lower, const std::vector<Point>& upper,
                  std::string fill, double opacity, std::string legend);
    void add_line(std::vector<Point> points, std::string stroke, double width, std::string legend);

    // Forces the y range to include [lo, hi].
    void include_y(double lo, double hi);
    void set_y_as_percent(bool on) { y_percent_ = on; }

    std::string render() const;

private:
    struct Band {
        std::vector<Point> lower;
        std::vector<Point> upper;
        std::string fill;
        double opacity;
        std::string legend;
    };
    struct Line {
        std::vector<Point> points;
        std::string stroke;
        double width;
        std::string legend;
    };

    std::string title_;
    std::string x_label_;
    std::string y_label_;
    std::vector<Band> bands_;
    std::vector<Line> lines_;
    std::vector<double> forced_y_;
    bool y_percent_ = false;
};

// Colour for series `index` of `count` (blue to red).
std::string series_colour(std::size_t index, std::size_t count);

} // namespace fundrisk
