#include <doctest.h>

#include <random>

#include "fockrank/bidegree_poly.hpp"
#include "fockrank/errors.hpp"

using namespace fockrank;

namespace {

BidegreePoly random_poly(std::shared_ptr<const MonomialOrder> order, int deg,
                         std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    BidegreePoly p(order, order->degree_cap(), order->degree_cap());
    const std::int64_t live = order->count_up_to(deg);
    for (std::int64_t rm = 0; rm < live; ++rm) {
        for (std::int64_t rn = 0; rn < live; ++rn) {
            p.set_coeff(order->at(rm), order->at(rn),
                        Complex(unit(rng), unit(rng)));
        }
    }
    return p;
}

}  // namespace

TEST_CASE("monomial order is graded and self-consistent") {
    MonomialOrder order(2, 5);
    CHECK(order.size() == MonomialOrder::count_multi_indices(2, 5));
    CHECK(order.count_up_to(0) == 1);
    CHECK(order.count_up_to(1) == 3);
    for (std::int64_t r = 1; r < order.size(); ++r) {
        CHECK(order.total_degree(r) >= order.total_degree(r - 1));
        CHECK(order.rank_of(order.at(r)) == r);
    }
    CHECK(order.rank_of({0, 0}) == 0);
    CHECK(order.rank_of({6, 0}) == -1);
    CHECK(order.rank_of({-1, 1}) == -1);
}

TEST_CASE("poly_one is the multiplicative identity and averages to 1") {
    auto p = BidegreePoly::one(1, 3);
    CHECK(p.coeff({0}, {0}) == Complex(1.0));

    OpCounter ops;
    CHECK(p.gaussian_average(ops) == Complex(1.0));

    std::mt19937_64 rng(7);
    auto order = std::make_shared<const MonomialOrder>(2, 6);
    BidegreePoly q = random_poly(order, 3, rng);
    BidegreePoly one = BidegreePoly::one(order, 6, 6);
    const BidegreePoly prod = poly_multiply(one, q, ops);
    CHECK(prod.same_table(q, 0.0));
}

TEST_CASE("binomial square (1 + z z*)^2") {
    auto order = std::make_shared<const MonomialOrder>(1, 4);
    BidegreePoly p(order, 2, 2);
    p.set_coeff({0}, {0}, Complex(1.0));
    p.set_coeff({1}, {1}, Complex(1.0));

    OpCounter ops;
    const BidegreePoly sq = poly_multiply(p, p, ops);
    CHECK(sq.coeff({0}, {0}) == Complex(1.0));
    CHECK(sq.coeff({1}, {1}) == Complex(2.0));
    CHECK(sq.coeff({2}, {2}) == Complex(1.0));
    CHECK(sq.coeff({1}, {0}) == Complex(0.0));
    CHECK(ops.mul_adds > 0);
}

TEST_CASE("rank-1 permanent inner step: product of three factors") {
    // prod_mu (1 + u_mu v_mu z z*): the z z* coefficient is sum_mu u_mu v_mu.
    const Complex u[3] = {{0.3, 0.1}, {-0.7, 0.4}, {0.2, -0.9}};
    const Complex v[3] = {{1.1, -0.2}, {0.5, 0.3}, {-0.4, 0.8}};

    auto order = std::make_shared<const MonomialOrder>(1, 3);
    BidegreePoly prod = BidegreePoly::one(order, 3, 3);
    OpCounter ops;
    for (int mu = 0; mu < 3; ++mu) {
        BidegreePoly f(order, 1, 1);
        f.set_coeff({0}, {0}, Complex(1.0));
        f.set_coeff({1}, {1}, u[mu] * v[mu]);
        prod.multiply_in_place(f, ops);
    }
    const Complex want = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    CHECK(std::abs(prod.coeff({1}, {1}) - want) < 1e-15);
    // Top coefficient is the full product of the three couplings.
    CHECK(std::abs(prod.coeff({3}, {3}) - u[0] * v[0] * u[1] * v[1] * u[2] * v[2]) <
          1e-15);
}

TEST_CASE("multiplication commutes and associates") {
    std::mt19937_64 rng(42);
    auto order = std::make_shared<const MonomialOrder>(2, 12);
    for (int trial = 0; trial < 5; ++trial) {
        const BidegreePoly p = random_poly(order, 2, rng);
        const BidegreePoly q = random_poly(order, 2, rng);
        const BidegreePoly r = random_poly(order, 2, rng);

        OpCounter ops;
        const BidegreePoly pq = poly_multiply(p, q, ops);
        const BidegreePoly qp = poly_multiply(q, p, ops);
        CHECK(pq.same_table(qp, 1e-13));

        const BidegreePoly pq_r = poly_multiply(pq, r, ops);
        const BidegreePoly qr = poly_multiply(q, r, ops);
        const BidegreePoly p_qr = poly_multiply(p, qr, ops);
        CHECK(pq_r.same_table(p_qr, 1e-12));
    }
}

TEST_CASE("gaussian average: moment table and examples") {
    auto order = std::make_shared<const MonomialOrder>(1, 12);
    OpCounter ops;

    SUBCASE("z z* -> 1") {
        BidegreePoly p(order, 6, 6);
        p.set_coeff({1}, {1}, Complex(1.0));
        CHECK(p.gaussian_average(ops) == Complex(1.0));
    }
    SUBCASE("z^2 z*^2 -> 2") {
        BidegreePoly p(order, 6, 6);
        p.set_coeff({2}, {2}, Complex(1.0));
        CHECK(p.gaussian_average(ops) == Complex(2.0));
    }
    SUBCASE("5 + 3 z z* -> 8") {
        BidegreePoly p(order, 6, 6);
        p.set_coeff({0}, {0}, Complex(5.0));
        p.set_coeff({1}, {1}, Complex(3.0));
        CHECK(p.gaussian_average(ops) == Complex(8.0));
    }
    SUBCASE("delta_{m,n} m! for m, n <= 6") {
        for (int m = 0; m <= 6; ++m) {
            for (int n = 0; n <= 6; ++n) {
                BidegreePoly p(order, 6, 6);
                p.set_coeff({m}, {n}, Complex(1.0));
                double want = 0.0;
                if (m == n) {
                    want = 1.0;
                    for (int i = 2; i <= m; ++i) want *= i;
                }
                CHECK(p.gaussian_average(ops) == Complex(want));
            }
        }
    }
    SUBCASE("off-diagonal vanishes at k=2") {
        auto order2 = std::make_shared<const MonomialOrder>(2, 4);
        BidegreePoly p(order2, 2, 2);
        p.set_coeff({1, 0}, {0, 1}, Complex(1.0));
        CHECK(p.gaussian_average(ops) == Complex(0.0));
    }
}

TEST_CASE("gaussian average is linear") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto order = std::make_shared<const MonomialOrder>(2, 6);
    OpCounter ops;
    for (int trial = 0; trial < 10; ++trial) {
        const BidegreePoly p = random_poly(order, 3, rng);
        const BidegreePoly q = random_poly(order, 3, rng);
        const Complex a(unit(rng), unit(rng));
        const Complex b(unit(rng), unit(rng));

        BidegreePoly combo(order, 6, 6);
        combo.add_scaled(p, a);
        combo.add_scaled(q, b);

        const Complex lhs = combo.gaussian_average(ops);
        const Complex rhs =
            a * p.gaussian_average(ops) + b * q.gaussian_average(ops);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("gaussian average factorizes over disjoint variable pairs") {
    // p uses only variable 1, q only variable 2 (k=2): S(p q) = S(p) S(q).
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    auto order = std::make_shared<const MonomialOrder>(2, 8);
    OpCounter ops;
    for (int trial = 0; trial < 10; ++trial) {
        BidegreePoly p(order, 8, 8);
        BidegreePoly q(order, 8, 8);
        for (int m = 0; m <= 2; ++m) {
            for (int n = 0; n <= 2; ++n) {
                p.set_coeff({m, 0}, {n, 0}, Complex(unit(rng), unit(rng)));
                q.set_coeff({0, m}, {0, n}, Complex(unit(rng), unit(rng)));
            }
        }
        const BidegreePoly pq = poly_multiply(p, q, ops);
        const Complex lhs = pq.gaussian_average(ops);
        const Complex rhs = p.gaussian_average(ops) * q.gaussian_average(ops);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("cap overflow is an error, never silent truncation") {
    auto order = std::make_shared<const MonomialOrder>(1, 4);
    BidegreePoly p(order, 2, 2);
    p.set_coeff({2}, {2}, Complex(1.0));
    BidegreePoly q(order, 2, 2);
    q.set_coeff({1}, {1}, Complex(1.0));

    OpCounter ops;
    CHECK_THROWS_AS(p.multiply_in_place(q, ops), CapOverflowError);
    CHECK_THROWS_AS(BidegreePoly(order, 9, 0), CapOverflowError);
}

TEST_CASE("operation counter grows like N^{2k+1} for a running product") {
    // k=1, degree-1 factors into a running product: ops(N) ~ c N^3.  Check
    // the ratio between N and 2N against the cubic model within slack.
    auto run = [](int n_factors) {
        auto order = std::make_shared<const MonomialOrder>(1, n_factors);
        BidegreePoly prod = BidegreePoly::one(order, n_factors, n_factors);
        OpCounter ops;
        for (int mu = 0; mu < n_factors; ++mu) {
            BidegreePoly f(order, 1, 1);
            f.set_coeff({0}, {0}, Complex(1.0));
            f.set_coeff({1}, {1}, Complex(0.5 / (mu + 1), 0.25));
            prod.multiply_in_place(f, ops);
        }
        return ops.mul_adds;
    };
    const double r = static_cast<double>(run(64)) / static_cast<double>(run(32));
    CHECK(r > 6.0);   // 2^3 = 8 with boundary slack
    CHECK(r < 10.0);
}
