#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fundrisk::csv {

struct Row {
    std::size_t line = 0;  // 1-based line number in the source file
    std::vector<std::string> cells;
};

struct Table {
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<Row> rows;

    // Index of a header column, or nullopt.
    std::optional<std::size_t> column(std::string_view name) const;
};

// Reads a comma-separated file with a header line. Fields are trimmed;
// double-quoted fields may contain commas. Blank lines are skipped and a
// leading UTF-8 byte-order mark is ignored. Throws DataError.
Table read_file(const std::filesystem::path& path);

// Parses CSV text (used by read_file; exposed for tests).
Table parse(std::string_view text, const std::filesystem::path& source = {});

// True for an empty cell or one of the usual missing-value markers.
bool is_missing(std::string_view cell);

// Strict number parsing: the whole cell must be consumed. Throws DataError
// naming the line and column.
double parse_double(const Row& row, std::size_t col, std::string_view column_name,
                    const std::filesystem::path& source);

std::optional<double> parse_optional_double(const Row& row, std::size_t col,
                                            std::string_view column_name,
                                            const std::filesystem::path& source);

long long parse_integer(const Row& row, std::size_t col, std::string_view column_name,
                        const std::filesystem::path& source);

// Fixed 6-significant-digit formatting used by every CSV writer.
std::string format_number(double value);

} // namespace fundrisk::csv
