#include <doctest.h>

#include <cmath>
#include <random>

#include "fockrank/factor_builder.hpp"
#include "fockrank/oracles.hpp"

using namespace fockrank;

namespace {

FactorState make_state(int d, Statistics stat,
                       std::initializer_list<std::pair<OccVector, Complex>> terms) {
    FactorState f;
    f.d = d;
    f.statistics = stat;
    for (const auto& [occ, amp] : terms) f.terms[occ] = amp;
    return f;
}

FactorState random_state(int d, Statistics stat, int n_max, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    FactorState f;
    f.d = d;
    f.statistics = stat;
    std::vector<OccVector> stack;
    OccVector cur(d, 0);
    // All occupations with total <= n_max.
    const std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == d) {
            stack.push_back(cur);
            return;
        }
        const int cap = stat == Statistics::Fermion ? std::min(left, 1) : left;
        for (int n = 0; n <= cap; ++n) {
            cur[pos] = n;
            rec(pos + 1, left - n);
        }
        cur[pos] = 0;
    };
    rec(0, n_max);
    for (const auto& occ : stack) f.terms[occ] = Complex(unit(rng), unit(rng));
    return f;
}

CMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    CMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) m(r, c) = Complex(unit(rng), unit(rng));
    }
    return m;
}

// Independent route to the factor coefficients: dense ladder matrices on the
// truncated local Fock basis.
Complex coefficient_by_matrices(const FactorState& bra, const FactorState& ket,
                                const CMatrix& u_mu, const CMatrix& v_mu,
                                const MultiIndex& m, const MultiIndex& n) {
    const int d = bra.d;
    const int k = static_cast<int>(u_mu.cols());
    int cap = std::max(bra.max_particles(), ket.max_particles());
    for (int a = 0; a < k; ++a) cap += m[a];
    const oracles::FockBasis basis(bra.statistics, d, cap);
    const int dim = basis.size();

    std::vector<CMatrix> creators(d, CMatrix::Zero(dim, dim));
    for (int col = 0; col < dim; ++col) {
        const OccVector& occ = basis.at(col);
        for (int mode = 0; mode < d; ++mode) {
            OccVector raised = occ;
            raised[mode] += 1;
            const int row = basis.index_of(raised);
            if (row < 0) continue;
            if (bra.statistics == Statistics::Boson) {
                creators[mode](row, col) = std::sqrt(double(raised[mode]));
            } else {
                if (occ[mode] == 1) continue;
                int below = 0;
                for (int i = 0; i < mode; ++i) below += occ[i];
                creators[mode](row, col) = (below & 1) ? -1.0 : 1.0;
            }
        }
    }

    Eigen::VectorXcd ket_vec = Eigen::VectorXcd::Zero(dim);
    for (const auto& [occ, amp] : ket.terms) ket_vec(basis.index_of(occ)) += amp;
    Eigen::VectorXcd bra_vec = Eigen::VectorXcd::Zero(dim);
    for (const auto& [occ, amp] : bra.terms) bra_vec(basis.index_of(occ)) += amp;

    // v-string ascending in alpha acts right to left; same for the u-string.
    Eigen::VectorXcd state = ket_vec;
    double denom = 1.0;
    for (int a = k - 1; a >= 0; --a) {
        CMatrix op = CMatrix::Zero(dim, dim);
        for (int mode = 0; mode < d; ++mode) {
            op += v_mu(a, mode) * creators[mode].adjoint();
        }
        for (int rep = 0; rep < n[a]; ++rep) state = op * state;
        for (int i = 2; i <= n[a]; ++i) denom *= i;
    }
    for (int a = k - 1; a >= 0; --a) {
        CMatrix op = CMatrix::Zero(dim, dim);
        for (int mode = 0; mode < d; ++mode) {
            op += u_mu(mode, a) * creators[mode];
        }
        for (int rep = 0; rep < m[a]; ++rep) state = op * state;
        for (int i = 2; i <= m[a]; ++i) denom *= i;
    }
    return (bra_vec.adjoint() * state)(0) / denom;
}

}  // namespace

TEST_CASE("lowering string examples") {
    SUBCASE("vacuum annihilates") {
        const auto vac = make_state(1, Statistics::Boson, {{{0}, Complex(1.0)}});
        const CMatrix v = CMatrix::Constant(1, 1, Complex(3.0));
        CHECK(apply_lowering_string(vac, v, {1}).is_zero());
    }
    SUBCASE("single boson lowered with coupling 3") {
        const auto one = make_state(1, Statistics::Boson, {{{1}, Complex(1.0)}});
        const CMatrix v = CMatrix::Constant(1, 1, Complex(3.0));
        const auto out = apply_lowering_string(one, v, {1});
        REQUIRE(out.terms.size() == 1);
        CHECK(out.terms.at({0}) == Complex(3.0));
    }
    SUBCASE("two bosons lowered twice: a^2|2>/2! = sqrt(2)/2 |0>") {
        const auto two = make_state(1, Statistics::Boson, {{{2}, Complex(1.0)}});
        const CMatrix v = CMatrix::Constant(1, 1, Complex(1.0));
        const auto out = apply_lowering_string(two, v, {2});
        REQUIRE(out.terms.size() == 1);
        CHECK(std::abs(out.terms.at({0}) - Complex(std::sqrt(2.0) / 2.0)) < 1e-15);
    }
}

TEST_CASE("raising string examples") {
    SUBCASE("vacuum raised with coupling 2") {
        const auto vac = make_state(1, Statistics::Boson, {{{0}, Complex(1.0)}});
        const CMatrix u = CMatrix::Constant(1, 1, Complex(2.0));
        const auto out = apply_raising_string(vac, u, {1});
        REQUIRE(out.terms.size() == 1);
        CHECK(out.terms.at({1}) == Complex(2.0));
    }
    SUBCASE("fermionic double creation dies") {
        const auto one = make_state(1, Statistics::Fermion, {{{1}, Complex(1.0)}});
        const CMatrix u = CMatrix::Constant(1, 1, Complex(1.0));
        CHECK(apply_raising_string(one, u, {1}).is_zero());
    }
    SUBCASE("(a†_1 + a†_2)^2 / 2! on a 2-mode vacuum") {
        const auto vac = make_state(2, Statistics::Boson, {{{0, 0}, Complex(1.0)}});
        const CMatrix u = CMatrix::Ones(2, 1);
        const auto out = apply_raising_string(vac, u, {2});
        REQUIRE(out.terms.size() == 3);
        CHECK(std::abs(out.terms.at({2, 0}) - Complex(std::sqrt(2.0) / 2.0)) < 1e-15);
        CHECK(std::abs(out.terms.at({1, 1}) - Complex(1.0)) < 1e-15);
        CHECK(std::abs(out.terms.at({0, 2}) - Complex(std::sqrt(2.0) / 2.0)) < 1e-15);
    }
}

TEST_CASE("single-particle bosonic factor is 1 + u v z z*") {
    const auto one = make_state(1, Statistics::Boson, {{{1}, Complex(1.0)}});
    const CMatrix u = CMatrix::Constant(1, 1, Complex(2.0));
    const CMatrix v = CMatrix::Constant(1, 1, Complex(3.0));
    auto order = std::make_shared<const MonomialOrder>(1, 2);
    const BidegreePoly f = build_boson_factor(one, one, u, v, order, 1, 1);
    CHECK(f.coeff({0}, {0}) == Complex(1.0));
    CHECK(std::abs(f.coeff({1}, {1}) - Complex(6.0)) < 1e-15);
    CHECK(f.coeff({1}, {0}) == Complex(0.0));
    CHECK(f.coeff({0}, {1}) == Complex(0.0));
}

TEST_CASE("vacuum factor reduces to the constant 1") {
    const auto vac = make_state(1, Statistics::Boson, {{{0}, Complex(1.0)}});
    const CMatrix u = CMatrix::Constant(1, 1, Complex(2.0));
    const CMatrix v = CMatrix::Constant(1, 1, Complex(-3.0));
    auto order = std::make_shared<const MonomialOrder>(1, 2);
    const BidegreePoly f = build_boson_factor(vac, vac, u, v, order, 1, 1);
    CHECK(f.coeff({0}, {0}) == Complex(1.0));
    CHECK(f.nonzero_terms().size() == 1);
}

TEST_CASE("fermionic single-particle factor has |u v| pair coupling") {
    const auto one = make_state(1, Statistics::Fermion, {{{1}, Complex(1.0)}});
    const CMatrix u = CMatrix::Constant(1, 1, Complex(0.8, -0.3));
    const CMatrix v = CMatrix::Constant(1, 1, Complex(-0.4, 0.9));
    const GrassmannElement f = build_fermion_factor(one, one, u, v);
    CHECK(f.coeff(0b00) == Complex(1.0));
    CHECK(std::abs(std::abs(f.coeff(0b11)) - std::abs(u(0, 0) * v(0, 0))) < 1e-15);
    CHECK(f.coeff(0b01) == Complex(0.0));
    CHECK(f.coeff(0b10) == Complex(0.0));
}

TEST_CASE("single-boson fast path matches Eq-style expansion") {
    SUBCASE("k=2 picker") {
        auto order = std::make_shared<const MonomialOrder>(2, 2);
        Eigen::RowVectorXcd u(2);
        u << Complex(1.0), Complex(0.0);
        Eigen::VectorXcd v(2);
        v << Complex(0.0), Complex(1.0);
        const BidegreePoly f = build_single_boson_factor(u, v, order);
        CHECK(f.coeff({0, 0}, {0, 0}) == Complex(1.0));
        CHECK(f.coeff({1, 0}, {0, 1}) == Complex(1.0));
        CHECK(f.coeff({1, 0}, {1, 0}) == Complex(0.0));
        CHECK(f.coeff({0, 1}, {0, 1}) == Complex(0.0));
    }

    SUBCASE("agrees with build_boson_factor on random draws") {
        std::mt19937_64 rng(77);
        for (int seed = 0; seed < 100; ++seed) {
            const int k = 1 + static_cast<int>(rng() % 3);
            auto order = std::make_shared<const MonomialOrder>(k, 2);
            const CMatrix u = random_matrix(1, k, rng);
            const CMatrix v = random_matrix(k, 1, rng);
            const auto one =
                make_state(1, Statistics::Boson, {{{1}, Complex(1.0)}});
            const BidegreePoly fast =
                build_single_boson_factor(u.row(0), v.col(0), order);
            const BidegreePoly general =
                build_boson_factor(one, one, u, v, order, 1, 1);
            CHECK(fast.same_table(general, 1e-12));
        }
    }
}

TEST_CASE("number-conserving states have only diagonal-degree coefficients") {
    std::mt19937_64 rng(31);
    const CMatrix u = random_matrix(2, 2, rng);
    const CMatrix v = random_matrix(2, 2, rng);
    // Definite two-particle state on two modes.
    const auto state = make_state(
        2, Statistics::Boson,
        {{{2, 0}, Complex(0.5)}, {{1, 1}, Complex(0.7, 0.1)}, {{0, 2}, Complex(0.3, -0.2)}});
    auto order = std::make_shared<const MonomialOrder>(2, 4);
    const BidegreePoly f = build_boson_factor(state, state, u, v, order, 2, 2);
    for (const auto& t : f.nonzero_terms()) {
        int dm = 0, dn = 0;
        for (int a : t.m) dm += a;
        for (int a : t.n) dn += a;
        CHECK(dm == dn);
    }
}

TEST_CASE("zero couplings collapse the factor to <bra|ket>") {
    std::mt19937_64 rng(41);
    const auto state = random_state(2, Statistics::Boson, 2, rng);
    const CMatrix zero_u = CMatrix::Zero(2, 1);
    const CMatrix zero_v = CMatrix::Zero(1, 2);
    auto order = std::make_shared<const MonomialOrder>(1, 4);
    const BidegreePoly f =
        build_boson_factor(state, state, zero_u, zero_v, order, 2, 2);
    const auto terms = f.nonzero_terms();
    REQUIRE(terms.size() == 1);
    CHECK(std::abs(terms[0].coeff - Complex(state_norm_sq(state))) < 1e-14);
}

TEST_CASE("adjoint couplings give the adjoint coefficient table") {
    std::mt19937_64 rng(53);
    const auto state = random_state(2, Statistics::Boson, 2, rng);
    const CMatrix u = random_matrix(2, 2, rng);
    const CMatrix v = random_matrix(2, 2, rng);
    auto order = std::make_shared<const MonomialOrder>(2, 4);
    const BidegreePoly f = build_boson_factor(state, state, u, v, order, 2, 2);
    const BidegreePoly g = build_boson_factor(state, state, v.adjoint(),
                                              u.adjoint(), order, 2, 2);
    for (const auto& t : f.nonzero_terms()) {
        CHECK(std::abs(g.coeff(t.n, t.m) - std::conj(t.coeff)) < 1e-12);
    }
}

TEST_CASE("coefficients equal the dense-matrix ladder route") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const Statistics stat =
            (trial % 2 == 0) ? Statistics::Boson : Statistics::Fermion;
        const int d = 1 + static_cast<int>(rng() % 2);
        const int k = 1 + static_cast<int>(rng() % 2);
        const int n_max = stat == Statistics::Fermion
                              ? std::min(d, 2)
                              : 1 + static_cast<int>(rng() % 2);
        const auto bra = random_state(d, stat, n_max, rng);
        const auto ket = random_state(d, stat, n_max, rng);
        const CMatrix u = random_matrix(d, k, rng);
        const CMatrix v = random_matrix(k, d, rng);

        if (stat == Statistics::Boson) {
            auto order = std::make_shared<const MonomialOrder>(k, 2 * n_max);
            const BidegreePoly f =
                build_boson_factor(bra, ket, u, v, order, n_max, n_max);
            const auto& ord = f.order();
            for (std::int64_t rm = 0; rm < ord.count_up_to(n_max); ++rm) {
                for (std::int64_t rn = 0; rn < ord.count_up_to(n_max); ++rn) {
                    const Complex want = coefficient_by_matrices(
                        bra, ket, u, v, ord.at(rm), ord.at(rn));
                    const Complex got = f.coeff(ord.at(rm), ord.at(rn));
                    CHECK(std::abs(got - want) <=
                          1e-10 * std::max(1.0, std::abs(want)));
                }
            }
        } else {
            const GrassmannElement f = build_fermion_factor(bra, ket, u, v);
            // Check the magnitude of every coefficient against the matrix
            // route (the monomial reorder sign is folded into f).
            MultiIndex m(k), n(k);
            for (std::uint32_t s_set = 0; s_set < (1u << k); ++s_set) {
                for (std::uint32_t t_set = 0; t_set < (1u << k); ++t_set) {
                    std::uint32_t mask = 0;
                    for (int a = 0; a < k; ++a) {
                        m[a] = (s_set >> a) & 1;
                        n[a] = (t_set >> a) & 1;
                        if (m[a]) mask |= 1u << GrassmannElement::z_bit(a + 1);
                        if (n[a]) mask |= 1u << GrassmannElement::zstar_bit(a + 1);
                    }
                    const Complex want =
                        coefficient_by_matrices(bra, ket, u, v, m, n);
                    const Complex got = f.coeff(mask);
                    const int sign = GrassmannElement::reorder_sign(
                        mask & 0b01010101u, mask & 0b10101010u);
                    CHECK(std::abs(got - double(sign) * want) <=
                          1e-10 * std::max(1.0, std::abs(want)));
                }
            }
        }
    }
}
