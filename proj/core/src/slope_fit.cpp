#include "fockrank/slope_fit.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fockrank/errors.hpp"

namespace fockrank {

SlopeFit fit_loglog(const std::vector<BenchRecord>& records) {
    std::set<int> distinct;
    for (const auto& r : records) distinct.insert(r.n);
    if (distinct.size() < 4) {
        throw ValidationError(ValidationError::Kind::BadField,
                              "slope fit needs at least 4 distinct N values");
    }

    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    const double count = static_cast<double>(records.size());
    for (const auto& r : records) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(static_cast<double>(r.op_count));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double var_x = sxx - sx * sx / count;
    const double cov = sxy - sx * sy / count;
    const double var_y = syy - sy * sy / count;

    SlopeFit fit;
    fit.slope = cov / var_x;
    fit.intercept = (sy - fit.slope * sx) / count;
    fit.r_squared = var_y > 0 ? (cov * cov) / (var_x * var_y) : 1.0;
    return fit;
}

std::string to_csv_row(const BenchRecord& r) {
    std::ostringstream out;
    out.precision(17);
    out << r.n << ',' << r.k << ',' << r.d << ',' << to_string(r.statistics)
        << ',' << r.deg_cap << ',' << r.op_count << ',' << r.wall_seconds << ','
        << r.value.real() << ',' << r.value.imag() << ',' << r.seed;
    return out.str();
}

void append_csv(const std::string& path, const std::vector<BenchRecord>& records) {
    std::vector<BenchRecord> sorted = records;
    std::sort(sorted.begin(), sorted.end(),
              [](const BenchRecord& a, const BenchRecord& b) { return a.n < b.n; });

    namespace fs = std::filesystem;
    const bool need_header = !fs::exists(path) || fs::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out) {
        throw ValidationError(ValidationError::Kind::BadField,
                              "cannot write '" + path + "'");
    }
    if (need_header) out << kBenchCsvHeader << '\n';
    for (const auto& r : sorted) out << to_csv_row(r) << '\n';
}

}  // namespace fockrank
