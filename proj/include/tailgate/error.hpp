#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tailgate {

// Invalid user-supplied parameter (gamma out of range, bad grid, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Data violates an operation's precondition (zero row, non-finite cell, ...).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Fewer exceedances above a threshold than the operation needs.
class InsufficientExceedances : public DataError {
public:
    InsufficientExceedances(std::size_t have, std::size_t need)
        : DataError("insufficient exceedances: have " + std::to_string(have) +
                    ", need " + std::to_string(need)),
          have(have), need(need) {}
    std::size_t have;
    std::size_t need;
};

// File or parse failure; message carries the location when known.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tailgate
