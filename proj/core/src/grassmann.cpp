#include "fockrank/grassmann.hpp"

#include <bit>
#include <stdexcept>

namespace fockrank {

GrassmannElement::GrassmannElement(int k) : k_(k) {
    if (k < 1 || k > 12) {
        throw std::invalid_argument("Grassmann pair count out of range");
    }
    coeffs_.assign(std::size_t{1} << (2 * k), Complex(0.0));
}

GrassmannElement GrassmannElement::one(int k) {
    GrassmannElement e(k);
    e.coeffs_[0] = Complex(1.0);
    return e;
}

GrassmannElement GrassmannElement::generator(int k, int a, bool conjugate) {
    GrassmannElement e(k);
    e.coeffs_[std::uint32_t{1} << (conjugate ? zstar_bit(a) : z_bit(a))] =
        Complex(1.0);
    return e;
}

int GrassmannElement::reorder_sign(std::uint32_t a, std::uint32_t b) {
    // Inversions: pairs (i in a, j in b) with i > j.
    int inversions = 0;
    while (b != 0) {
        const int j = std::countr_zero(b);
        b &= b - 1;
        inversions += std::popcount(a >> (j + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

namespace {

// Bit positions i for which the number of b-bits below i is odd; then
// sign(a, b) = parity of popcount(a & odd_below(b)).
std::uint32_t odd_below_mask(std::uint32_t b, int bits) {
    std::uint32_t out = 0;
    int count = 0;
    for (int i = 0; i < bits; ++i) {
        if (count & 1) out |= (std::uint32_t{1} << i);
        if (b & (std::uint32_t{1} << i)) ++count;
    }
    return out;
}

}  // namespace

void GrassmannElement::multiply_in_place_right(const GrassmannElement& rhs,
                                               OpCounter& ops) {
    if (rhs.k_ != k_) throw std::invalid_argument("pair counts differ");
    const std::uint32_t size = mask_count();

    Complex constant(0.0);
    bool has_constant = false;
    struct Term {
        std::uint32_t mask;
        std::uint32_t odd_below;
        Complex coeff;
    };
    std::vector<Term> terms;
    for (std::uint32_t b = 0; b < size; ++b) {
        const Complex c = rhs.coeffs_[b];
        if (c == Complex(0.0)) continue;
        if (b == 0) {
            constant = c;
            has_constant = true;
        } else {
            terms.push_back({b, odd_below_mask(b, 2 * k_), c});
        }
    }

    // In place: sources scanned in descending mask order; each surviving
    // write lands on a strictly larger mask, already consumed as a source.
    std::uint64_t performed = 0;
    for (std::uint32_t a = size; a-- > 0;) {
        const Complex v = coeffs_[a];
        if (has_constant) {
            coeffs_[a] = constant * v;
            ++performed;
        } else {
            coeffs_[a] = Complex(0.0);
        }
        if (v == Complex(0.0)) continue;
        for (const auto& t : terms) {
            if ((a & t.mask) != 0) continue;
            const bool negative = std::popcount(a & t.odd_below) & 1;
            const Complex contrib = t.coeff * v;
            coeffs_[a | t.mask] += negative ? -contrib : contrib;
            ++performed;
        }
    }
    ops.add(performed);
}

void GrassmannElement::multiply_in_place_left(const GrassmannElement& lhs,
                                              OpCounter& ops) {
    if (lhs.k_ != k_) throw std::invalid_argument("pair counts differ");
    const std::uint32_t size = mask_count();

    Complex constant(0.0);
    bool has_constant = false;
    struct Term {
        std::uint32_t mask;
        Complex coeff;
    };
    std::vector<Term> terms;
    for (std::uint32_t b = 0; b < size; ++b) {
        const Complex c = lhs.coeffs_[b];
        if (c == Complex(0.0)) continue;
        if (b == 0) {
            constant = c;
            has_constant = true;
        } else {
            terms.push_back({b, c});
        }
    }

    std::uint64_t performed = 0;
    for (std::uint32_t a = size; a-- > 0;) {
        const Complex v = coeffs_[a];
        if (has_constant) {
            coeffs_[a] = constant * v;
            ++performed;
        } else {
            coeffs_[a] = Complex(0.0);
        }
        if (v == Complex(0.0)) continue;
        for (const auto& t : terms) {
            if ((a & t.mask) != 0) continue;
            // lhs monomial stands to the LEFT of the running one.
            const int sign = reorder_sign(t.mask, a);
            const Complex contrib = t.coeff * v;
            coeffs_[a | t.mask] += sign < 0 ? -contrib : contrib;
            ++performed;
        }
    }
    ops.add(performed);
}

Complex GrassmannElement::berezin_average(OpCounter& ops) const {
    // Masks that are unions of complete pairs: iterate subsets of [k].
    long double re = 0.0L, im = 0.0L;
    const std::uint32_t subsets = std::uint32_t{1} << k_;
    for (std::uint32_t p = 0; p < subsets; ++p) {
        std::uint32_t mask = 0;
        for (int a = 0; a < k_; ++a) {
            if (p & (std::uint32_t{1} << a)) mask |= std::uint32_t{0b11} << (2 * a);
        }
        const Complex c = coeffs_[mask];
        re += c.real();
        im += c.imag();
    }
    ops.add(subsets);
    return Complex(static_cast<double>(re), static_cast<double>(im));
}

GrassmannElement GrassmannElement::even_part() const {
    GrassmannElement out(k_);
    for (std::uint32_t m = 0; m < mask_count(); ++m) {
        if ((std::popcount(m) & 1) == 0) out.coeffs_[m] = coeffs_[m];
    }
    return out;
}

GrassmannElement GrassmannElement::odd_part() const {
    GrassmannElement out(k_);
    for (std::uint32_t m = 0; m < mask_count(); ++m) {
        if (std::popcount(m) & 1) out.coeffs_[m] = coeffs_[m];
    }
    return out;
}

bool GrassmannElement::is_even() const {
    for (std::uint32_t m = 0; m < mask_count(); ++m) {
        if ((std::popcount(m) & 1) && coeffs_[m] != Complex(0.0)) return false;
    }
    return true;
}

bool GrassmannElement::is_zero() const {
    for (const auto& c : coeffs_) {
        if (c != Complex(0.0)) return false;
    }
    return true;
}

void GrassmannElement::add_scaled(const GrassmannElement& q, Complex scale) {
    if (q.k_ != k_) throw std::invalid_argument("pair counts differ");
    for (std::uint32_t m = 0; m < mask_count(); ++m) {
        coeffs_[m] += scale * q.coeffs_[m];
    }
}

void GrassmannElement::scale(Complex factor) {
    for (auto& c : coeffs_) c *= factor;
}

double GrassmannElement::max_abs_difference(const GrassmannElement& other) const {
    double worst = 0.0;
    for (std::uint32_t m = 0; m < mask_count(); ++m) {
        worst = std::max(worst, std::abs(coeffs_[m] - other.coeffs_[m]));
    }
    return worst;
}

GrassmannElement grassmann_multiply(const GrassmannElement& p,
                                    const GrassmannElement& q, OpCounter& ops) {
    GrassmannElement out = p;
    out.multiply_in_place_right(q, ops);
    return out;
}

}  // namespace fockrank
