#include "tailgate/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "tailgate/error.hpp"

namespace tailgate {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

Sample read_csv(const std::string& path, bool allow_negative) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
    Sample s;
    for (const auto& h : split_line(line)) s.labels.push_back(strip(h));
    s.d = s.labels.size();
    if (s.d < 2) throw IoError("'" + path + "' has " + std::to_string(s.d) +
                               " column(s); need at least 2");

    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (strip(line).empty()) continue;
        ++row;
        auto cells = split_line(line);
        if (cells.size() != s.d)
            throw IoError("'" + path + "': row " + std::to_string(row) + " has " +
                          std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(s.d));
        for (std::size_t j = 0; j < s.d; ++j) {
            std::string cell = strip(cells[j]);
            double v = 0.0;
            auto [p, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || p != cell.data() + cell.size())
                throw IoError("'" + path + "': cannot parse cell \"" + cell + "\" at row " +
                              std::to_string(row) + ", column " + std::to_string(j + 1));
            if (std::isnan(v))
                throw IoError("'" + path + "': NaN at row " + std::to_string(row) +
                              ", column " + std::to_string(j + 1));
            if (!allow_negative && v < 0.0)
                throw IoError("'" + path + "': negative value at row " + std::to_string(row) +
                              ", column " + std::to_string(j + 1) +
                              " (rank-transform the data or pass nonnegative input)");
            s.data.push_back(v);
        }
    }
    s.n = row;
    if (s.n == 0) throw IoError("'" + path + "' has a header but no data rows");
    return s;
}

std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

void write_csv(const std::string& path, const Sample& sample) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    for (std::size_t j = 0; j < sample.d; ++j) {
        if (j) out << ',';
        out << sample.labels[j];
    }
    out << '\n';
    for (std::size_t i = 0; i < sample.n; ++i) {
        for (std::size_t j = 0; j < sample.d; ++j) {
            if (j) out << ',';
            out << format_double(sample(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace tailgate
