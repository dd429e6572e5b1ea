#include <doctest.h>

#include <bit>
#include <random>

#include "fockrank/grassmann.hpp"

using namespace fockrank;

namespace {

GrassmannElement random_element(int k, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    GrassmannElement e(k);
    for (std::uint32_t m = 0; m < e.mask_count(); ++m) {
        e.set_coeff(m, Complex(unit(rng), unit(rng)));
    }
    return e;
}

GrassmannElement homogeneous(int k, int degree, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    GrassmannElement e(k);
    for (std::uint32_t m = 0; m < e.mask_count(); ++m) {
        if (std::popcount(m) == degree) {
            e.set_coeff(m, Complex(unit(rng), unit(rng)));
        }
    }
    return e;
}

}  // namespace

TEST_CASE("anticommutation: z_2 z_1 = -(z_1 z_2)") {
    OpCounter ops;
    const auto z1 = GrassmannElement::generator(2, 1, false);
    const auto z2 = GrassmannElement::generator(2, 2, false);
    const auto lhs = grassmann_multiply(z2, z1, ops);
    const auto rhs = grassmann_multiply(z1, z2, ops);

    const std::uint32_t mask = 0b0101;  // z_1 z_2
    CHECK(lhs.coeff(mask) == Complex(-1.0));
    CHECK(rhs.coeff(mask) == Complex(1.0));
}

TEST_CASE("nilpotency: z_1 z_1 = 0") {
    OpCounter ops;
    const auto z1 = GrassmannElement::generator(1, 1, false);
    CHECK(grassmann_multiply(z1, z1, ops).is_zero());
}

TEST_CASE("(1 + z_1 z*_1)^2 = 1 + 2 z_1 z*_1") {
    GrassmannElement p(1);
    p.set_coeff(0b00, Complex(1.0));
    p.set_coeff(0b11, Complex(1.0));
    OpCounter ops;
    const auto sq = grassmann_multiply(p, p, ops);
    CHECK(sq.coeff(0b00) == Complex(1.0));
    CHECK(sq.coeff(0b11) == Complex(2.0));
    CHECK(sq.coeff(0b01) == Complex(0.0));
    CHECK(sq.coeff(0b10) == Complex(0.0));
}

TEST_CASE("multiplication is bilinear and associative") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    OpCounter ops;
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const auto p = random_element(k, rng);
        const auto q = random_element(k, rng);
        const auto r = random_element(k, rng);

        const auto pq_r = grassmann_multiply(grassmann_multiply(p, q, ops), r, ops);
        const auto p_qr = grassmann_multiply(p, grassmann_multiply(q, r, ops), ops);
        CHECK(pq_r.max_abs_difference(p_qr) < 1e-13);

        const Complex a(unit(rng), unit(rng));
        const Complex b(unit(rng), unit(rng));
        GrassmannElement combo(k);
        combo.add_scaled(p, a);
        combo.add_scaled(q, b);
        const auto lhs = grassmann_multiply(combo, r, ops);
        GrassmannElement rhs(k);
        rhs.add_scaled(grassmann_multiply(p, r, ops), a);
        rhs.add_scaled(grassmann_multiply(q, r, ops), b);
        CHECK(lhs.max_abs_difference(rhs) < 1e-13);
    }
}

TEST_CASE("graded commutativity: p q = (-1)^{|p||q|} q p") {
    std::mt19937_64 rng(9);
    OpCounter ops;
    const int k = 2;
    for (int dp = 0; dp <= 2 * k; ++dp) {
        for (int dq = 0; dq <= 2 * k; ++dq) {
            const auto p = homogeneous(k, dp, rng);
            const auto q = homogeneous(k, dq, rng);
            const auto pq = grassmann_multiply(p, q, ops);
            auto qp = grassmann_multiply(q, p, ops);
            if ((dp * dq) & 1) qp.scale(Complex(-1.0));
            CHECK(pq.max_abs_difference(qp) < 1e-13);
        }
    }
}

TEST_CASE("products of even elements are even and order-independent") {
    std::mt19937_64 rng(13);
    OpCounter ops;
    const int k = 2;
    std::vector<GrassmannElement> evens;
    for (int i = 0; i < 4; ++i) evens.push_back(random_element(k, rng).even_part());

    GrassmannElement forward = GrassmannElement::one(k);
    for (const auto& e : evens) forward.multiply_in_place_right(e, ops);
    CHECK(forward.is_even());

    GrassmannElement backward = GrassmannElement::one(k);
    for (auto it = evens.rbegin(); it != evens.rend(); ++it) {
        backward.multiply_in_place_right(*it, ops);
    }
    CHECK(forward.max_abs_difference(backward) < 1e-13);
}

TEST_CASE("berezin average picks complete pairs with unit sign") {
    OpCounter ops;
    GrassmannElement e(2);
    e.set_coeff(0b0000, Complex(3.0));
    e.set_coeff(0b0011, Complex(5.0));   // z_1 z*_1
    e.set_coeff(0b1100, Complex(7.0));   // z_2 z*_2
    e.set_coeff(0b1111, Complex(11.0));  // both pairs
    e.set_coeff(0b0001, Complex(100.0)); // unpaired, ignored
    e.set_coeff(0b0110, Complex(100.0)); // z*_1 z_2, unpaired, ignored
    CHECK(e.berezin_average(ops) == Complex(3.0 + 5.0 + 7.0 + 11.0));
}

TEST_CASE("left multiply agrees with building the product the long way") {
    std::mt19937_64 rng(21);
    OpCounter ops;
    for (int trial = 0; trial < 10; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        const auto p = random_element(k, rng);
        const auto q = random_element(k, rng);
        auto lhs = q;
        lhs.multiply_in_place_left(p, ops);
        const auto want = grassmann_multiply(p, q, ops);
        CHECK(lhs.max_abs_difference(want) < 1e-13);
    }
}
