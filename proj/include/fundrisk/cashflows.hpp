#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace fundrisk {

// Yearly benefit outgo in real GBP bn. payments[t-1] is paid at the end of
// period t, i.e. in calendar year start_year + t - 1.
struct CashflowSchedule {
    int start_year = 0;
    std::vector<double> payments;

    std::size_t horizon() const { return payments.size(); }
    int year_of_period(std::size_t t) const { return start_year + static_cast<int>(t) - 1; }
    int end_year() const { return year_of_period(horizon()); }

    // Throws ConfigError if empty or any payment is negative or non-finite.
    void validate() const;
};

// Loads `year,<component...>` and sums the requested component columns per
// year. A column's trailing empty cells count as zero; the horizon is the
// length of the longest requested column. Years must be consecutive.
// Throws DataError on unknown columns, negative values or malformed rows.
CashflowSchedule load_cashflows(const std::filesystem::path& path,
                                const std::vector<std::string>& components);

} // namespace fundrisk
