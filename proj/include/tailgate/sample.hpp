#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tailgate {

// n x d matrix of nonnegative observations, row-major, with column labels.
struct Sample {
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<double> data;  // row-major, size n*d
    std::vector<std::string> labels;

    double operator()(std::size_t i, std::size_t j) const { return data[i * d + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data[i * d + j]; }
    const double* row(std::size_t i) const { return data.data() + i * d; }
};

inline Sample make_sample(std::size_t n, std::size_t d) {
    Sample s;
    s.n = n;
    s.d = d;
    s.data.assign(n * d, 0.0);
    s.labels.resize(d);
    for (std::size_t j = 0; j < d; ++j) s.labels[j] = "x" + std::to_string(j + 1);
    return s;
}

}  // namespace tailgate
