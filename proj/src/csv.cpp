#include "fundrisk/csv.hpp"

#include "fundrisk/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fundrisk {

DataError::DataError(const std::string& what, std::string file, std::size_t line)
    : std::runtime_error([&] {
          std::string msg;
          if (!file.empty()) {
              msg += file;
              if (line > 0) {
                  msg += ":" + std::to_string(line);
              }
              msg += ": ";
          }
          return msg + what;
      }()),
      file_(std::move(file)),
      line_(line) {}

} // namespace fundrisk

namespace fundrisk::csv {

namespace {

std::string trim(std::string_view s) {
    auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split_line(std::string_view line, std::size_t line_no,
                                    const std::filesystem::path& source) {
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    bool was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && trim(cur).empty()) {
            cur.clear();
            quoted = true;
            was_quoted = true;
        } else if (c == ',') {
            cells.push_back(was_quoted ? cur : trim(cur));
            cur.clear();
            was_quoted = false;
        } else if (was_quoted && (c == ' ' || c == '\t')) {
            continue;  // padding after a closing quote
        } else {
            cur += c;
        }
    }
    if (quoted) {
        throw DataError("unterminated quoted field", source.string(), line_no);
    }
    cells.push_back(was_quoted ? cur : trim(cur));
    return cells;
}

std::string cell_at(const Row& row, std::size_t col) {
    return col < row.cells.size() ? row.cells[col] : std::string{};
}

} // namespace

std::optional<std::size_t> Table::column(std::string_view name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - header.begin());
}

Table parse(std::string_view text, const std::filesystem::path& source) {
    Table table;
    table.source = source;
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    std::size_t line_no = 0;
    bool have_header = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto cells = split_line(line, line_no, source);
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
        } else {
            table.rows.push_back(Row{line_no, std::move(cells)});
        }
    }
    if (!have_header) {
        throw DataError("file is empty (no header line)", source.string());
    }
    return table;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError("cannot open file", path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path);
}

bool is_missing(std::string_view cell) {
    static constexpr std::array<std::string_view, 6> markers{"", "NA", "N/A", "NaN", "nan", "."};
    return std::find(markers.begin(), markers.end(), cell) != markers.end();
}

double parse_double(const Row& row, std::size_t col, std::string_view column_name,
                    const std::filesystem::path& source) {
    const auto v = parse_optional_double(row, col, column_name, source);
    if (!v) {
        throw DataError("missing value in column '" + std::string(column_name) + "'",
                        source.string(), row.line);
    }
    return *v;
}

std::optional<double> parse_optional_double(const Row& row, std::size_t col,
                                            std::string_view column_name,
                                            const std::filesystem::path& source) {
    const std::string cell = cell_at(row, col);
    if (is_missing(cell)) {
        return std::nullopt;
    }
    double value = 0.0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw DataError("column '" + std::string(column_name) + "': '" + cell +
                            "' is not a finite number",
                        source.string(), row.line);
    }
    return value;
}

long long parse_integer(const Row& row, std::size_t col, std::string_view column_name,
                        const std::filesystem::path& source) {
    const std::string cell = cell_at(row, col);
    long long value = 0;
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), last, value);
    if (cell.empty() || ec != std::errc{} || ptr != last) {
        throw DataError("column '" + std::string(column_name) + "': '" + cell +
                            "' is not an integer",
                        source.string(), row.line);
    }
    return value;
}

std::string format_number(double value) {
    std::array<char, 64> buf{};
    // Avoid "-0" in outputs.
    if (value == 0.0) value = 0.0;
    std::snprintf(buf.data(), buf.size(), "%.6g", value);
    return buf.data();
}

} // namespace fundrisk::csv
