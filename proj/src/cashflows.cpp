#include "fundrisk/cashflows.hpp"

#include "fundrisk/csv.hpp"
#include "fundrisk/errors.hpp"

#include <cmath>
#include <optional>

namespace fundrisk {

void CashflowSchedule::validate() const {
    if (payments.empty()) {
        throw ConfigError("cashflow schedule is empty");
    }
    for (std::size_t i = 0; i < payments.size(); ++i) {
        if (!std::isfinite(payments[i]) || payments[i] < 0.0) {
            throw ConfigError("cashflow payment for " + std::to_string(year_of_period(i + 1)) +
                              " must be finite and >= 0");
        }
    }
}

CashflowSchedule load_cashflows(const std::filesystem::path& path,
                                const std::vector<std::string>& components) {
    const auto table = csv::read_file(path);
    const std::string src = path.string();
    const auto year_col = table.column("year");
    if (!year_col) {
        throw DataError("missing 'year' column", src, 1);
    }
    if (components.empty()) {
        throw DataError("no cashflow components requested", src);
    }
    std::vector<std::size_t> cols;
    for (const auto& name : components) {
        const auto c = table.column(name);
        if (!c) {
            throw DataError("unknown cashflow column '" + name + "'", src, 1);
        }
        cols.push_back(*c);
    }

    CashflowSchedule schedule;
    std::size_t horizon = 0;
    std::vector<double> sums;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto year = csv::parse_integer(row, *year_col, "year", table.source);
        if (r == 0) {
            schedule.start_year = static_cast<int>(year);
        } else if (year != schedule.start_year + static_cast<long long>(r)) {
            throw DataError("years must be consecutive (expected " +
                                std::to_string(schedule.start_year + r) + ")",
                            src, row.line);
        }
        double sum = 0.0;
        bool any = false;
        for (std::size_t k = 0; k < cols.size(); ++k) {
            const auto v = csv::parse_optional_double(row, cols[k], components[k], table.source);
            if (!v) {
                continue;
            }
            if (*v < 0.0) {
                throw DataError("negative payment in column '" + components[k] + "'", src,
                                row.line);
            }
            sum += *v;
            any = true;
        }
        sums.push_back(sum);
        if (any) {
            horizon = r + 1;
        }
    }
    if (horizon == 0) {
        throw DataError("requested cashflow columns contain no values", src);
    }
    sums.resize(horizon);
    schedule.payments = std::move(sums);
    return schedule;
}

} // namespace fundrisk
