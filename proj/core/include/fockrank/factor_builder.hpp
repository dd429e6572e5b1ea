#pragma once

#include <memory>
#include <variant>

#include "fockrank/bidegree_poly.hpp"
#include "fockrank/grassmann.hpp"
#include "fockrank/model.hpp"

namespace fockrank {

/// Per-block auxiliary polynomial: the bosonic case is a BidegreePoly, the
/// fermionic one a GrassmannElement.
struct FactorPolynomial {
    int block = 0;
    Statistics statistics = Statistics::Boson;
    std::variant<BidegreePoly, GrassmannElement> value;

    const BidegreePoly& boson() const { return std::get<BidegreePoly>(value); }
    const GrassmannElement& fermion() const {
        return std::get<GrassmannElement>(value);
    }
};

/// prod_a (v_hat_a)^{n_a} |state> / prod_a n_a!, where v_hat_a is the
/// annihilator sum_j v(a, j) a_j over the block's modes.  The operator
/// string is written in ascending a and applied right to left.  Annihilating
/// past the vacuum yields the zero state.
FactorState apply_lowering_string(const FactorState& state, const CMatrix& v_mu,
                                  const MultiIndex& n);

/// Mirror with creators u_hat†_a = sum_i u(i, a) a†_i and division by m_a!.
/// Terms whose total occupation exceeds `max_total` are dropped (pass a
/// negative bound to keep everything); the caller uses the bra's particle
/// bound, whose pairing annihilates such terms anyway.
FactorState apply_raising_string(const FactorState& state, const CMatrix& u_mu,
                                 const MultiIndex& m, int max_total = -1);

/// Single ladder applications, exposed for the oracle-style checks.
FactorState apply_annihilator(const FactorState& state,
                              const Eigen::RowVectorXcd& coeffs);
FactorState apply_creator(const FactorState& state,
                          const Eigen::VectorXcd& coeffs);

/// Bosonic factor polynomial: coefficient of z^m (z*)^n equals
/// <bra| prod_a (u_hat†_a)^{m_a}/m_a!  prod_a (v_hat_a)^{n_a}/n_a! |ket>.
BidegreePoly build_boson_factor(const FactorState& bra, const FactorState& ket,
                                const CMatrix& u_mu, const CMatrix& v_mu,
                                std::shared_ptr<const MonomialOrder> order,
                                int cap_m, int cap_n);

/// Fermionic factor.  Coefficients attach to the canonical interleaved
/// monomial order; the operator strings are ascending in alpha on both
/// sides, and the monomial reorder sign is folded in.  When `ket_parity_twist`
/// is set the ket is weighted by (-1)^{N_hat} first; the engine needs that
/// variant to assemble cross-block products of parity-mixed factors.
GrassmannElement build_fermion_factor(const FactorState& bra,
                                      const FactorState& ket,
                                      const CMatrix& u_mu, const CMatrix& v_mu,
                                      bool ket_parity_twist = false);

/// Eq.-free fast path for a single-particle d=1 bosonic factor {[1] -> 1}:
/// directly 1 + (sum_a u_a z_a)(sum_b v_b z*_b).
BidegreePoly build_single_boson_factor(const Eigen::RowVectorXcd& u_row,
                                       const Eigen::VectorXcd& v_col,
                                       std::shared_ptr<const MonomialOrder> order);

/// General entry point matching the spec surface.
FactorPolynomial build_factor(const FactorState& bra, const FactorState& ket,
                              const CMatrix& u_mu, const CMatrix& v_mu,
                              Statistics statistics, int block,
                              std::shared_ptr<const MonomialOrder> order);

/// State with odd-particle-number amplitudes negated.
FactorState parity_weighted(const FactorState& state);

}  // namespace fockrank
