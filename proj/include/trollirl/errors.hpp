#pragma once

#include <stdexcept>
#include <string>

namespace trollirl {

// Bad configuration or usage. CLI exit code 1.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Unreadable, malformed, or insufficient input data. CLI exit code 2.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Schema violation in a line-delimited input, with the 1-based line number.
struct ParseError : DataError {
    ParseError(std::size_t line, const std::string& msg)
        : DataError("line " + std::to_string(line) + ": " + msg), line_number(line) {}
    std::size_t line_number;
};

// Non-convergence or non-finite values in numerical routines. CLI exit code 3.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace trollirl
