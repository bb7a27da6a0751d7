#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fundrisk {

// Invalid parameters or scenario fields. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or malformed input files. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::string file = {}, std::size_t line = 0);

    const std::string& file() const noexcept { return file_; }
    // 1-based; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

// A value outside the mathematical domain of an operation (e.g. a
// non-positive discount factor).
class NumericDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace fundrisk
