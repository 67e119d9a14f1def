#pragma once

#include <string>

#include "tailgate/sample.hpp"

namespace tailgate {

// Reads a headered CSV of numeric columns into a Sample. Requires at least
// two columns and one data row. Parse failures name the offending data row
// (1-based, header excluded) and column. NaN cells are rejected; negative
// values are rejected unless allow_negative is set (raw series that will be
// rank-transformed may be negative).
Sample read_csv(const std::string& path, bool allow_negative = false);

// Writes a Sample as CSV with its column labels. Doubles are written
// shortest-round-trip so rereading reproduces them bit-exactly.
void write_csv(const std::string& path, const Sample& sample);

// Formats one double shortest-round-trip (shared by CSV and table output).
std::string format_double(double v);

}  // namespace tailgate
