#pragma once

#include <complex>
#include <cmath>
#include <cstdint>

namespace fockrank {

using Complex = std::complex<double>;

/// Relative error with an absolute floor, the comparison used by every
/// oracle-equivalence check in this project.
inline double relative_error(Complex got, Complex want, double abs_floor = 1e-12) {
    const double denom = std::max(std::abs(want), abs_floor);
    return std::abs(got - want) / denom;
}

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Elementary-operation accumulator.  Passed explicitly and merged by the
/// caller; never hidden global state.  One unit = one complex multiply-add
/// actually performed.
struct OpCounter {
    std::uint64_t mul_adds = 0;

    void add(std::uint64_t n) { mul_adds += n; }
    OpCounter& operator+=(const OpCounter& o) {
        mul_adds += o.mul_adds;
        return *this;
    }
};

}  // namespace fockrank
