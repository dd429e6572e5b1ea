#include "fockrank/bidegree_poly.hpp"

#include <algorithm>
#include <string>

#include "fockrank/errors.hpp"

namespace fockrank {

BidegreePoly::BidegreePoly(std::shared_ptr<const MonomialOrder> order,
                           int cap_m, int cap_n)
    : order_(std::move(order)), cap_m_(cap_m), cap_n_(cap_n) {
    if (cap_m < 0 || cap_n < 0 || cap_m > order_->degree_cap() ||
        cap_n > order_->degree_cap()) {
        throw CapOverflowError("bidegree caps (" + std::to_string(cap_m) + ", " +
                               std::to_string(cap_n) +
                               ") outside the monomial order's cap " +
                               std::to_string(order_->degree_cap()));
    }
    rows_m_ = order_->count_up_to(cap_m_);
    stride_ = order_->count_up_to(cap_n_);
    coeffs_.assign(static_cast<std::size_t>(rows_m_ * stride_), Complex(0.0));
}

BidegreePoly BidegreePoly::one(std::shared_ptr<const MonomialOrder> order,
                               int cap_m, int cap_n) {
    BidegreePoly p(std::move(order), cap_m, cap_n);
    p.coeffs_[0] = Complex(1.0);
    return p;
}

BidegreePoly BidegreePoly::one(int k, int cap) {
    auto order = std::make_shared<const MonomialOrder>(k, cap);
    return one(order, cap, cap);
}

Complex BidegreePoly::coeff(const MultiIndex& m, const MultiIndex& n) const {
    const std::int64_t rm = order_->rank_of(m);
    const std::int64_t rn = order_->rank_of(n);
    if (rm < 0 || rm >= rows_m_ || rn < 0 || rn >= stride_) return Complex(0.0);
    return coeffs_[index(rm, rn)];
}

void BidegreePoly::set_coeff(const MultiIndex& m, const MultiIndex& n,
                             Complex value) {
    const std::int64_t rm = order_->rank_of(m);
    const std::int64_t rn = order_->rank_of(n);
    if (rm < 0 || rm >= rows_m_ || rn < 0 || rn >= stride_) {
        throw CapOverflowError("set_coeff outside the table's degree caps");
    }
    coeffs_[index(rm, rn)] = value;
    deg_m_ = std::max(deg_m_, order_->total_degree(rm));
    deg_n_ = std::max(deg_n_, order_->total_degree(rn));
}

std::vector<BidegreeTerm> BidegreePoly::nonzero_terms() const {
    std::vector<BidegreeTerm> out;
    const std::int64_t live_m = order_->count_up_to(deg_m_);
    const std::int64_t live_n = order_->count_up_to(deg_n_);
    for (std::int64_t rm = 0; rm < live_m; ++rm) {
        for (std::int64_t rn = 0; rn < live_n; ++rn) {
            const Complex c = coeffs_[index(rm, rn)];
            if (c != Complex(0.0)) {
                out.push_back({order_->at(rm), order_->at(rn), c});
            }
        }
    }
    return out;
}

void BidegreePoly::multiply_in_place(const std::vector<BidegreeTerm>& rhs_terms,
                                     int rhs_deg_m, int rhs_deg_n,
                                     OpCounter& ops) {
    const int new_deg_m = deg_m_ + rhs_deg_m;
    const int new_deg_n = deg_n_ + rhs_deg_n;
    if (new_deg_m > cap_m_ || new_deg_n > cap_n_) {
        throw CapOverflowError(
            "product degree (" + std::to_string(new_deg_m) + ", " +
            std::to_string(new_deg_n) + ") exceeds caps (" +
            std::to_string(cap_m_) + ", " + std::to_string(cap_n_) + ")");
    }

    Complex constant(0.0);
    bool has_constant = false;
    struct Shift {
        Complex coeff;
        std::vector<std::int32_t> sub_m;  // per dest m-rank: source m-rank or -1
        std::vector<std::int32_t> sub_n;
    };
    std::vector<Shift> shifts;

    const std::int64_t dest_m = order_->count_up_to(new_deg_m);
    const std::int64_t dest_n = order_->count_up_to(new_deg_n);

    for (const auto& t : rhs_terms) {
        int deg_tm = 0, deg_tn = 0;
        for (int a : t.m) deg_tm += a;
        for (int a : t.n) deg_tn += a;
        if (deg_tm == 0 && deg_tn == 0) {
            constant = t.coeff;
            has_constant = true;
            continue;
        }
        Shift s;
        s.coeff = t.coeff;
        s.sub_m.resize(dest_m);
        for (std::int64_t r = 0; r < dest_m; ++r) {
            s.sub_m[r] =
                static_cast<std::int32_t>(order_->rank_of_difference(r, t.m));
        }
        s.sub_n.resize(dest_n);
        for (std::int64_t r = 0; r < dest_n; ++r) {
            s.sub_n[r] =
                static_cast<std::int32_t>(order_->rank_of_difference(r, t.n));
        }
        shifts.push_back(std::move(s));
    }

    // In-place convolution.  Destination cells are visited in descending
    // (rank_m, rank_n) order; every source cell (dest - term) has a strictly
    // smaller rank pair and so still holds its pre-product value.
    std::uint64_t performed = 0;
    for (std::int64_t rm = dest_m - 1; rm >= 0; --rm) {
        Complex* row = coeffs_.data() + rm * stride_;
        for (std::int64_t rn = dest_n - 1; rn >= 0; --rn) {
            Complex acc(0.0);
            if (has_constant) {
                acc = constant * row[rn];
                ++performed;
            }
            for (const auto& s : shifts) {
                const std::int32_t sm = s.sub_m[rm];
                if (sm < 0) continue;
                const std::int32_t sn = s.sub_n[rn];
                if (sn < 0) continue;
                acc += s.coeff * coeffs_[index(sm, sn)];
                ++performed;
            }
            row[rn] = acc;
        }
    }
    ops.add(performed);

    deg_m_ = new_deg_m;
    deg_n_ = new_deg_n;
}

void BidegreePoly::multiply_in_place(const BidegreePoly& rhs, OpCounter& ops) {
    multiply_in_place(rhs.nonzero_terms(), rhs.deg_m(), rhs.deg_n(), ops);
}

Complex BidegreePoly::gaussian_average(OpCounter& ops) const {
    const int diag_deg = std::min(deg_m_, deg_n_);
    const std::int64_t live = order_->count_up_to(diag_deg);
    long double re = 0.0L, im = 0.0L;
    for (std::int64_t r = 0; r < live; ++r) {
        const Complex c = coeffs_[index(r, r)];
        const long double w = order_->factorial_weight(r);
        re += w * static_cast<long double>(c.real());
        im += w * static_cast<long double>(c.imag());
    }
    ops.add(static_cast<std::uint64_t>(live));
    return Complex(static_cast<double>(re), static_cast<double>(im));
}

void BidegreePoly::add_scaled(const BidegreePoly& q, Complex scale) {
    if (q.deg_m() > cap_m_ || q.deg_n() > cap_n_) {
        throw CapOverflowError("add_scaled: addend degrees exceed caps");
    }
    const std::int64_t live_m = order_->count_up_to(q.deg_m());
    const std::int64_t live_n = order_->count_up_to(q.deg_n());
    for (std::int64_t rm = 0; rm < live_m; ++rm) {
        for (std::int64_t rn = 0; rn < live_n; ++rn) {
            coeffs_[index(rm, rn)] += scale * q.coeffs_[q.index(rm, rn)];
        }
    }
    deg_m_ = std::max(deg_m_, q.deg_m());
    deg_n_ = std::max(deg_n_, q.deg_n());
}

void BidegreePoly::scale(Complex factor) {
    for (auto& c : coeffs_) c *= factor;
}

bool BidegreePoly::same_table(const BidegreePoly& other, double tol) const {
    const int dm = std::max(deg_m_, other.deg_m());
    const int dn = std::max(deg_n_, other.deg_n());
    const auto& ord = *order_;
    const std::int64_t live_m = ord.count_up_to(std::min(dm, ord.degree_cap()));
    const std::int64_t live_n = ord.count_up_to(std::min(dn, ord.degree_cap()));
    for (std::int64_t rm = 0; rm < live_m; ++rm) {
        for (std::int64_t rn = 0; rn < live_n; ++rn) {
            const Complex a = coeff(ord.at(rm), ord.at(rn));
            const Complex b = other.coeff(ord.at(rm), ord.at(rn));
            if (std::abs(a - b) > tol) return false;
        }
    }
    return true;
}

BidegreePoly poly_multiply(const BidegreePoly& p, const BidegreePoly& q,
                           OpCounter& ops) {
    if (p.vars() != q.vars()) {
        throw CapOverflowError("poly_multiply: variable counts differ");
    }
    const int cap_m = p.deg_m() + q.deg_m();
    const int cap_n = p.deg_n() + q.deg_n();
    std::shared_ptr<const MonomialOrder> order = p.order_ptr();
    if (order->degree_cap() < std::max(cap_m, cap_n)) {
        order = std::make_shared<const MonomialOrder>(p.vars(),
                                                      std::max(cap_m, cap_n));
    }
    BidegreePoly dest(order, cap_m, cap_n);
    for (const auto& t : p.nonzero_terms()) dest.set_coeff(t.m, t.n, t.coeff);
    dest.multiply_in_place(q.nonzero_terms(), q.deg_m(), q.deg_n(), ops);
    return dest;
}

}  // namespace fockrank
