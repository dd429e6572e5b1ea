#pragma once

#include <cstdint>
#include <vector>

#include "fockrank/scalar.hpp"

namespace fockrank {

/// Element of the Grassmann algebra on 2k generators z_1, z*_1, .., z_k, z*_k.
/// Coefficients are indexed by a 2k-bit mask: bit 2(a-1) marks z_a, bit
/// 2(a-1)+1 marks z*_a.  A set mask denotes the monomial with its generators
/// written in ascending bit order, so each Gaussian pair {z_a, z*_a} is
/// contiguous and the Berezin average needs no extra sign.
class GrassmannElement {
public:
    explicit GrassmannElement(int k);

    static GrassmannElement one(int k);

    /// Single generator: z_a if conjugate is false, z*_a otherwise (a is
    /// 1-based).
    static GrassmannElement generator(int k, int a, bool conjugate);

    int pairs() const { return k_; }
    std::uint32_t mask_count() const { return static_cast<std::uint32_t>(coeffs_.size()); }

    Complex coeff(std::uint32_t mask) const { return coeffs_[mask]; }
    void set_coeff(std::uint32_t mask, Complex value) { coeffs_[mask] = value; }

    static int z_bit(int a) { return 2 * (a - 1); }
    static int zstar_bit(int a) { return 2 * (a - 1) + 1; }

    /// Sign of concatenating monomial `a` (left) with monomial `b` (right)
    /// and resorting into ascending generator order; the monomials must be
    /// disjoint.
    static int reorder_sign(std::uint32_t a, std::uint32_t b);

    /// this *= rhs (this on the left).  Counts one elementary operation per
    /// surviving (non-annihilated) term.
    void multiply_in_place_right(const GrassmannElement& rhs, OpCounter& ops);

    /// this = lhs * this (lhs on the left).
    void multiply_in_place_left(const GrassmannElement& lhs, OpCounter& ops);

    /// Berezin Gaussian average: sum of coefficients of masks made of
    /// complete pairs {z_a, z*_a}; with the interleaved generator order the
    /// calibration sign is +1 for every such mask.  Unpaired generators
    /// contribute nothing.
    Complex berezin_average(OpCounter& ops) const;

    /// Parts of even / odd total Grassmann degree.
    GrassmannElement even_part() const;
    GrassmannElement odd_part() const;
    bool is_even() const;
    bool is_zero() const;

    void add_scaled(const GrassmannElement& q, Complex scale);
    void scale(Complex factor);

    double max_abs_difference(const GrassmannElement& other) const;

private:
    int k_;
    std::vector<Complex> coeffs_;
};

GrassmannElement grassmann_multiply(const GrassmannElement& p,
                                    const GrassmannElement& q, OpCounter& ops);

}  // namespace fockrank
