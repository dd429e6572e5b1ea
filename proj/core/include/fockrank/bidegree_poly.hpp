#pragma once

#include <memory>
#include <vector>

#include "fockrank/monomial_order.hpp"
#include "fockrank/scalar.hpp"

namespace fockrank {

/// One monomial z^m (z*)^n with its coefficient, used when a polynomial is
/// consumed as a term list (factor polynomials are tiny and sparse).
struct BidegreeTerm {
    MultiIndex m;
    MultiIndex n;
    Complex coeff;
};

/// Polynomial in k commuting variables z_1..z_k and conjugates z*_1..z*_k
/// with total degree <= cap in each group.  Dense table indexed by the
/// graded-lex rank of (m, n); deg_m/deg_n track the degrees actually
/// reachable so products only touch live rows.
class BidegreePoly {
public:
    BidegreePoly(std::shared_ptr<const MonomialOrder> order, int cap_m, int cap_n);

    static BidegreePoly one(std::shared_ptr<const MonomialOrder> order,
                            int cap_m, int cap_n);
    static BidegreePoly one(int k, int cap);

    int vars() const { return order_->vars(); }
    int cap_m() const { return cap_m_; }
    int cap_n() const { return cap_n_; }
    int deg_m() const { return deg_m_; }
    int deg_n() const { return deg_n_; }
    const MonomialOrder& order() const { return *order_; }
    std::shared_ptr<const MonomialOrder> order_ptr() const { return order_; }

    Complex coeff(const MultiIndex& m, const MultiIndex& n) const;
    void set_coeff(const MultiIndex& m, const MultiIndex& n, Complex value);

    /// Number of stored table entries (rows_m * rows_n).
    std::int64_t table_size() const {
        return static_cast<std::int64_t>(coeffs_.size());
    }

    std::vector<BidegreeTerm> nonzero_terms() const;

    /// this *= rhs, exact convolution.  Every coefficient update is one
    /// counted multiply-add; structural zeros are multiplied like any other
    /// entry, matching the dense-update cost model the operation counter is
    /// meant to expose.  Throws CapOverflowError if the product degree
    /// exceeds this polynomial's caps.
    void multiply_in_place(const std::vector<BidegreeTerm>& rhs_terms,
                           int rhs_deg_m, int rhs_deg_n, OpCounter& ops);
    void multiply_in_place(const BidegreePoly& rhs, OpCounter& ops);

    /// Gaussian average S(p): sum over diagonal bidegrees (m == n) of
    /// coeff(m, m) * prod_a m_a!.  Accumulated in long double.
    Complex gaussian_average(OpCounter& ops) const;

    /// p + scale * q (same order, caps of *this).  Test/utility arithmetic.
    void add_scaled(const BidegreePoly& q, Complex scale);
    void scale(Complex factor);

    bool same_table(const BidegreePoly& other, double tol) const;

private:
    std::int64_t index(std::int64_t rank_m, std::int64_t rank_n) const {
        return rank_m * stride_ + rank_n;
    }

    std::shared_ptr<const MonomialOrder> order_;
    int cap_m_;
    int cap_n_;
    int deg_m_ = 0;
    int deg_n_ = 0;
    std::int64_t rows_m_;
    std::int64_t stride_;  // = rows_n
    std::vector<Complex> coeffs_;
};

/// p * q as a new polynomial with caps sized exactly to the product.
BidegreePoly poly_multiply(const BidegreePoly& p, const BidegreePoly& q,
                           OpCounter& ops);

}  // namespace fockrank
