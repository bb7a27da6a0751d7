#include "fundrisk/svg_chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace fundrisk {

namespace {

constexpr double width = 800.0;
constexpr double height = 500.0;
constexpr double margin_left = 80.0;
constexpr double margin_right = 170.0;
constexpr double margin_top = 50.0;
constexpr double margin_bottom = 60.0;

std::string fmt(double v) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2f", v);
    return buf.data();
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double nice_step(double span, int target) {
    if (!(span > 0.0)) return 1.0;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0;
    return step * mag;
}

std::string tick_label(double v, bool percent) {
    std::array<char, 32> buf{};
    if (percent) {
        std::snprintf(buf.data(), buf.size(), "%.0f%%", v * 100.0);
    } else {
        std::snprintf(buf.data(), buf.size(), "%g", v);
    }
    return buf.data();
}

} // namespace

SvgChart::SvgChart(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgChart::add_band(const std::vector<Point>& lower, const std::vector<Point>& upper,
                        std::string fill, double opacity, std::string legend) {
    bands_.push_back({lower, upper, std::move(fill), opacity, std::move(legend)});
}

void SvgChart::add_line(std::vector<Point> points, std::string stroke, double w, std::string legend) {
    lines_.push_back({std::move(points), std::move(stroke), w, std::move(legend)});
}

void SvgChart::include_y(double lo, double hi) {
    forced_y_.push_back(lo);
    forced_y_.push_back(hi);
}

std::string SvgChart::render() const {
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    auto extend = [&](const Point& p) {
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
        y_min = std::min(y_min, p.y);
        y_max = std::max(y_max, p.y);
    };
    for (const auto& b : bands_) {
        for (const auto& p : b.lower) extend(p);
        for (const auto& p : b.upper) extend(p);
    }
    for (const auto& l : lines_) {
        for (const auto& p : l.points) extend(p);
    }
    for (double y : forced_y_) {
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (!std::isfinite(x_min)) {
        x_min = 0.0;
        x_max = 1.0;
    }
    if (!std::isfinite(y_min)) {
        y_min = 0.0;
        y_max = 1.0;
    }
    if (x_max <= x_min) x_max = x_min + 1.0;
    if (y_max <= y_min) y_max = y_min + 1.0;

    const double y_step = nice_step(y_max - y_min, 6);
    y_min = std::floor(y_min / y_step) * y_step;
    y_max = std::ceil(y_max / y_step) * y_step;
    const double x_step = nice_step(x_max - x_min, 8);

    const double plot_w = width - margin_left - margin_right;
    const double plot_h = height - margin_top - margin_bottom;
    auto sx = [&](double x) { return margin_left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double y) { return margin_top + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n"
        << "<text x=\"" << fmt(width / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
        << escape(title_) << "</text>\n";

    // Grid and ticks.
    out << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (double y = y_min; y <= y_max + 0.5 * y_step; y += y_step) {
        out << "<line x1=\"" << fmt(margin_left) << "\" y1=\"" << fmt(sy(y)) << "\" x2=\""
            << fmt(margin_left + plot_w) << "\" y2=\"" << fmt(sy(y)) << "\"/>\n";
    }
    out << "</g>\n<g text-anchor=\"end\">\n";
    for (double y = y_min; y <= y_max + 0.5 * y_step; y += y_step) {
        out << "<text x=\"" << fmt(margin_left - 6) << "\" y=\"" << fmt(sy(y) + 4) << "\">"
            << tick_label(std::abs(y) < 1e-12 * y_step ? 0.0 : y, y_percent_) << "</text>\n";
    }
    out << "</g>\n<g text-anchor=\"middle\">\n";
    const double x_first = std::ceil(x_min / x_step) * x_step;
    for (double x = x_first; x <= x_max + 1e-9; x += x_step) {
        out << "<text x=\"" << fmt(sx(x)) << "\" y=\"" << fmt(margin_top + plot_h + 18) << "\">"
            << tick_label(x, false) << "</text>\n";
    }
    out << "</g>\n";
    out << "<rect x=\"" << fmt(margin_left) << "\" y=\"" << fmt(margin_top) << "\" width=\""
        << fmt(plot_w) << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(margin_left + plot_w / 2) << "\" y=\"" << fmt(height - 15)
        << "\" text-anchor=\"middle\">" << escape(x_label_) << "</text>\n";
    out << "<text transform=\"translate(20," << fmt(margin_top + plot_h / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label_) << "</text>\n";

    for (const auto& b : bands_) {
        out << "<polygon fill=\"" << b.fill << "\" fill-opacity=\"" << fmt(b.opacity)
            << "\" stroke=\"none\" points=\"";
        for (const auto& p : b.upper) out << fmt(sx(p.x)) << ',' << fmt(sy(p.y)) << ' ';
        for (auto it = b.lower.rbegin(); it != b.lower.rend(); ++it) {
            out << fmt(sx(it->x)) << ',' << fmt(sy(it->y)) << ' ';
        }
        out << "\"/>\n";
    }
    for (const auto& l : lines_) {
        out << "<polyline fill=\"none\" stroke=\"" << l.stroke << "\" stroke-width=\"" << fmt(l.width)
            << "\" points=\"";
        for (const auto& p : l.points) out << fmt(sx(p.x)) << ',' << fmt(sy(p.y)) << ' ';
        out << "\"/>\n";
    }

    // Legend.
    double ly = margin_top + 10;
    const double lx = margin_left + plot_w + 15;
    for (const auto& b : bands_) {
        if (b.legend.empty()) continue;
        out << "<rect x=\"" << fmt(lx) << "\" y=\"" << fmt(ly - 9) << "\" width=\"18\" height=\"10\" fill=\""
            << b.fill << "\" fill-opacity=\"" << fmt(b.opacity) << "\"/>\n"
            << "<text x=\"" << fmt(lx + 24) << "\" y=\"" << fmt(ly) << "\">" << escape(b.legend) << "</text>\n";
        ly += 18;
    }
    for (const auto& l : lines_) {
        if (l.legend.empty()) continue;
        out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\"" << fmt(lx + 18)
            << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << l.stroke << "\" stroke-width=\""
            << fmt(l.width) << "\"/>\n"
            << "<text x=\"" << fmt(lx + 24) << "\" y=\"" << fmt(ly) << "\">" << escape(l.legend) << "</text>\n";
        ly += 18;
    }
    out << "</svg>\n";
    return out.str();
}

std::string series_colour(std::size_t index, std::size_t count) {
    const double f = count <= 1 ? 0.0 : static_cast<double>(index) / static_cast<double>(count - 1);
    const int r = static_cast<int>(std::lround(30 + f * (200 - 30)));
    const int g = static_cast<int>(std::lround(90 + f * (40 - 90)));
    const int b = static_cast<int>(std::lround(200 + f * (40 - 200)));
    std::array<char, 8> buf{};
    std::snprintf(buf.data(), buf.size(), "#%02x%02x%02x", r, g, b);
    return buf.data();
}

} // namespace fundrisk
