#include "fockrank/factor_builder.hpp"

#include <array>
#include <cmath>

namespace fockrank {

namespace {

double sqrt_int(int n) {
    static const auto table = [] {
        std::array<double, 64> t{};
        for (int i = 0; i < 64; ++i) t[i] = std::sqrt(static_cast<double>(i));
        return t;
    }();
    return n < 64 ? table[n] : std::sqrt(static_cast<double>(n));
}

double factorial_int(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int total_occupation(const OccVector& occ) {
    int total = 0;
    for (int n : occ) total += n;
    return total;
}

// Jordan-Wigner sign for mode j: parity of the occupation below j.
int fermi_sign_below(const OccVector& occ, int j) {
    int count = 0;
    for (int i = 0; i < j; ++i) count += occ[i];
    return (count & 1) ? -1 : 1;
}

void accumulate(FactorState& out, const OccVector& occ, Complex amp) {
    auto [it, inserted] = out.terms.emplace(occ, amp);
    if (!inserted) it->second += amp;
}

void prune_zeros(FactorState& s) {
    for (auto it = s.terms.begin(); it != s.terms.end();) {
        if (it->second == Complex(0.0)) {
            it = s.terms.erase(it);
        } else {
            ++it;
        }
    }
}

}  // namespace

FactorState apply_annihilator(const FactorState& state,
                              const Eigen::RowVectorXcd& coeffs) {
    FactorState out;
    out.d = state.d;
    out.statistics = state.statistics;
    OccVector occ;
    for (const auto& [source, amp] : state.terms) {
        for (int j = 0; j < state.d; ++j) {
            const Complex c = coeffs(j);
            if (c == Complex(0.0) || source[j] == 0) continue;
            occ = source;
            occ[j] -= 1;
            if (state.statistics == Statistics::Boson) {
                accumulate(out, occ, amp * c * sqrt_int(source[j]));
            } else {
                accumulate(out, occ,
                           amp * c * static_cast<double>(fermi_sign_below(source, j)));
            }
        }
    }
    prune_zeros(out);
    return out;
}

FactorState apply_creator(const FactorState& state,
                          const Eigen::VectorXcd& coeffs) {
    FactorState out;
    out.d = state.d;
    out.statistics = state.statistics;
    OccVector occ;
    for (const auto& [source, amp] : state.terms) {
        for (int i = 0; i < state.d; ++i) {
            const Complex c = coeffs(i);
            if (c == Complex(0.0)) continue;
            if (state.statistics == Statistics::Fermion && source[i] == 1) continue;
            occ = source;
            occ[i] += 1;
            if (state.statistics == Statistics::Boson) {
                accumulate(out, occ, amp * c * sqrt_int(occ[i]));
            } else {
                accumulate(out, occ,
                           amp * c * static_cast<double>(fermi_sign_below(source, i)));
            }
        }
    }
    prune_zeros(out);
    return out;
}

FactorState apply_lowering_string(const FactorState& state, const CMatrix& v_mu,
                                  const MultiIndex& n) {
    const int k = static_cast<int>(v_mu.rows());
    FactorState current = state;
    // String ascending in alpha, applied right to left: largest alpha first.
    for (int a = k - 1; a >= 0; --a) {
        for (int rep = 0; rep < n[a]; ++rep) {
            if (current.is_zero()) return current;
            current = apply_annihilator(current, v_mu.row(a));
        }
    }
    double denom = 1.0;
    for (int a = 0; a < k; ++a) denom *= factorial_int(n[a]);
    if (denom != 1.0) {
        for (auto& [occ, amp] : current.terms) amp /= denom;
    }
    return current;
}

FactorState apply_raising_string(const FactorState& state, const CMatrix& u_mu,
                                 const MultiIndex& m, int max_total) {
    const int k = static_cast<int>(u_mu.cols());
    FactorState current = state;
    for (int a = k - 1; a >= 0; --a) {
        for (int rep = 0; rep < m[a]; ++rep) {
            if (current.is_zero()) return current;
            current = apply_creator(current, u_mu.col(a));
            if (max_total >= 0) {
                for (auto it = current.terms.begin(); it != current.terms.end();) {
                    if (total_occupation(it->first) > max_total) {
                        it = current.terms.erase(it);
                    } else {
                        ++it;
                    }
                }
            }
        }
    }
    double denom = 1.0;
    for (int a = 0; a < k; ++a) denom *= factorial_int(m[a]);
    if (denom != 1.0) {
        for (auto& [occ, amp] : current.terms) amp /= denom;
    }
    return current;
}

FactorState parity_weighted(const FactorState& state) {
    FactorState out = state;
    for (auto& [occ, amp] : out.terms) {
        if (total_occupation(occ) & 1) amp = -amp;
    }
    return out;
}

BidegreePoly build_boson_factor(const FactorState& bra, const FactorState& ket,
                                const CMatrix& u_mu, const CMatrix& v_mu,
                                std::shared_ptr<const MonomialOrder> order,
                                int cap_m, int cap_n) {
    BidegreePoly poly(order, cap_m, cap_n);
    const int bra_bound = bra.max_particles();
    const int ket_bound = ket.max_particles();
    const auto& ord = *poly.order_ptr();

    const std::int64_t n_count = ord.count_up_to(std::min(ket_bound, cap_n));
    const std::int64_t m_count = ord.count_up_to(std::min(bra_bound, cap_m));
    for (std::int64_t rn = 0; rn < n_count; ++rn) {
        const FactorState lowered = apply_lowering_string(ket, v_mu, ord.at(rn));
        if (lowered.is_zero()) continue;
        for (std::int64_t rm = 0; rm < m_count; ++rm) {
            const FactorState raised =
                apply_raising_string(lowered, u_mu, ord.at(rm), bra_bound);
            if (raised.is_zero()) continue;
            const Complex c = inner_product(bra, raised);
            if (c != Complex(0.0)) poly.set_coeff(ord.at(rm), ord.at(rn), c);
        }
    }
    return poly;
}

GrassmannElement build_fermion_factor(const FactorState& bra,
                                      const FactorState& ket,
                                      const CMatrix& u_mu, const CMatrix& v_mu,
                                      bool ket_parity_twist) {
    const int k = static_cast<int>(u_mu.cols());
    GrassmannElement out(k);
    const FactorState ket_state = ket_parity_twist ? parity_weighted(ket) : ket;
    const int bra_bound = bra.max_particles();

    MultiIndex m(k), n(k);
    const std::uint32_t subsets = std::uint32_t{1} << k;
    for (std::uint32_t t_set = 0; t_set < subsets; ++t_set) {
        std::uint32_t mask_t = 0;
        for (int a = 0; a < k; ++a) {
            n[a] = (t_set >> a) & 1;
            if (n[a]) mask_t |= std::uint32_t{1} << GrassmannElement::zstar_bit(a + 1);
        }
        const FactorState lowered = apply_lowering_string(ket_state, v_mu, n);
        if (lowered.is_zero()) continue;
        for (std::uint32_t s_set = 0; s_set < subsets; ++s_set) {
            std::uint32_t mask_s = 0;
            for (int a = 0; a < k; ++a) {
                m[a] = (s_set >> a) & 1;
                if (m[a]) mask_s |= std::uint32_t{1} << GrassmannElement::z_bit(a + 1);
            }
            const FactorState raised =
                apply_raising_string(lowered, u_mu, m, bra_bound);
            if (raised.is_zero()) continue;
            const Complex c = inner_product(bra, raised);
            if (c == Complex(0.0)) continue;
            // Monomial assembled as [z_S ascending][z*_T ascending], then
            // resorted into the canonical interleaved order.
            const int sign = GrassmannElement::reorder_sign(mask_s, mask_t);
            out.set_coeff(mask_s | mask_t,
                          out.coeff(mask_s | mask_t) +
                              (sign < 0 ? -c : c));
        }
    }
    return out;
}

BidegreePoly build_single_boson_factor(const Eigen::RowVectorXcd& u_row,
                                       const Eigen::VectorXcd& v_col,
                                       std::shared_ptr<const MonomialOrder> order) {
    const int k = static_cast<int>(u_row.cols());
    BidegreePoly poly(std::move(order), 1, 1);
    MultiIndex zero(k, 0);
    poly.set_coeff(zero, zero, Complex(1.0));
    MultiIndex m(k, 0), n(k, 0);
    for (int a = 0; a < k; ++a) {
        if (u_row(a) == Complex(0.0)) continue;
        m[a] = 1;
        for (int b = 0; b < k; ++b) {
            const Complex c = u_row(a) * v_col(b);
            if (c == Complex(0.0)) continue;
            n[b] = 1;
            poly.set_coeff(m, n, c);
            n[b] = 0;
        }
        m[a] = 0;
    }
    return poly;
}

FactorPolynomial build_factor(const FactorState& bra, const FactorState& ket,
                              const CMatrix& u_mu, const CMatrix& v_mu,
                              Statistics statistics, int block,
                              std::shared_ptr<const MonomialOrder> order) {
    if (statistics == Statistics::Boson) {
        const int cap_m = std::min<int>(bra.max_particles(), order->degree_cap());
        const int cap_n = std::min<int>(ket.max_particles(), order->degree_cap());
        return {block, statistics,
                build_boson_factor(bra, ket, u_mu, v_mu, std::move(order),
                                   cap_m, cap_n)};
    }
    return {block, statistics, build_fermion_factor(bra, ket, u_mu, v_mu)};
}

}  // namespace fockrank
