#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fockrank/model.hpp"

namespace fockrank {

struct BenchRecord {
    int n = 0;
    int k = 0;
    int d = 1;
    Statistics statistics = Statistics::Boson;
    int deg_cap = 0;
    std::uint64_t op_count = 0;
    double wall_seconds = 0.0;
    Complex value{};
    std::uint64_t seed = 0;
};

/// Least-squares fit of log(op_count) against log(N).
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Requires at least 4 distinct N values.
SlopeFit fit_loglog(const std::vector<BenchRecord>& records);

inline constexpr const char* kBenchCsvHeader =
    "n,k,d,stat,deg_cap,op_count,wall_s,re,im,seed";

std::string to_csv_row(const BenchRecord& r);

/// Writes records (ascending n) to `path`; emits the header only when the
/// file does not yet exist or is empty, so repeated sweeps append cleanly.
void append_csv(const std::string& path, const std::vector<BenchRecord>& records);

}  // namespace fockrank
