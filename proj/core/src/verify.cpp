#include "fockrank/verify.hpp"

#include <cmath>
#include <random>

#include "fockrank/bidegree_poly.hpp"
#include "fockrank/engine.hpp"
#include "fockrank/grassmann.hpp"
#include "fockrank/oracles.hpp"

namespace fockrank {
namespace verify {

namespace {

constexpr double kOracleTol = 1e-9;
constexpr double kExactFamilyTol = 1e-10;
constexpr double kNormalOrderedTol = 1e-12;

void enumerate_occupations(Statistics stat, int modes, int total, OccVector& cur,
                           int pos, std::vector<OccVector>& out) {
    if (pos == modes - 1) {
        if (stat == Statistics::Fermion && total > 1) return;
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    const int cap = stat == Statistics::Fermion ? std::min(total, 1) : total;
    for (int n = 0; n <= cap; ++n) {
        cur[pos] = n;
        enumerate_occupations(stat, modes, total - n, cur, pos + 1, out);
    }
}

FactorState random_factor(Statistics stat, int d, int n_max,
                          std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    FactorState f;
    f.d = d;
    f.statistics = stat;
    std::vector<OccVector> occs;
    OccVector cur(d, 0);
    for (int total = 0; total <= n_max; ++total) {
        enumerate_occupations(stat, d, total, cur, 0, occs);
    }
    for (const auto& occ : occs) {
        f.terms[occ] = Complex(unit(rng), unit(rng));
    }
    const double norm = std::sqrt(state_norm_sq(f));
    for (auto& [occ, amp] : f.terms) amp /= norm;
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

}  // namespace

Instance small_random_instance(std::uint64_t seed, Statistics statistics) {
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
    std::uniform_int_distribution<int> n_dist(1, 4);
    std::uniform_int_distribution<int> d_dist(1, 2);
    std::uniform_int_distribution<int> k_dist(1, 2);

    const int n_blocks = n_dist(rng);
    const int k = k_dist(rng);

    std::vector<int> dims(n_blocks);
    int modes = 0;
    for (int mu = 0; mu < n_blocks; ++mu) {
        dims[mu] = d_dist(rng);
        modes += dims[mu];
    }

    // Per-factor particle bounds <= 2 with the total kept inside the brute
    // force oracle's cap.
    const auto draw_factors = [&](ProductState& state) {
        state.statistics = statistics;
        int budget = oracles::kMaxBruteForceParticles;
        for (int mu = 0; mu < n_blocks; ++mu) {
            const int remaining = n_blocks - mu - 1;
            int cap = std::min(2, budget - remaining);
            if (statistics == Statistics::Fermion) cap = std::min(cap, dims[mu]);
            std::uniform_int_distribution<int> bound_dist(1, std::max(1, cap));
            const int n_max = bound_dist(rng);
            budget -= n_max;
            state.factors.push_back(random_factor(statistics, dims[mu], n_max, rng));
        }
    };

    Instance inst;
    draw_factors(inst.bra);
    if (seed % 2 == 0) {
        inst.distinct_bra_ket = true;
        draw_factors(inst.ket);
    }
    inst.op.u = random_matrix(modes, k, rng);
    inst.op.v = random_matrix(k, modes, rng);
    return validate_instance(std::move(inst));
}

SuiteResult run_moments() {
    SuiteResult result;
    result.suite = "moments";
    result.tolerance = 0.0;

    const auto order = std::make_shared<const MonomialOrder>(1, 12);
    for (int m = 0; m <= 6; ++m) {
        for (int n = 0; n <= 6; ++n) {
            BidegreePoly p(order, 6, 6);
            p.set_coeff({m}, {n}, Complex(1.0));
            OpCounter ops;
            const Complex got = p.gaussian_average(ops);
            double want = 0.0;
            if (m == n) {
                want = 1.0;
                for (int i = 2; i <= m; ++i) want *= i;
            }
            CaseResult c;
            c.name = "S(z^" + std::to_string(m) + " z*^" + std::to_string(n) + ")";
            c.error = std::abs(got - Complex(want));
            c.pass = got == Complex(want);
            result.cases.push_back(c);
        }
    }

    // Off-diagonal pair moment at k=2.
    {
        const auto order2 = std::make_shared<const MonomialOrder>(2, 4);
        BidegreePoly p(order2, 2, 2);
        p.set_coeff({1, 0}, {0, 1}, Complex(1.0));
        OpCounter ops;
        const Complex got = p.gaussian_average(ops);
        result.cases.push_back(
            {"S(z_1 z*_2)", std::abs(got), got == Complex(0.0)});
    }

    // Berezin counterpart.
    {
        OpCounter ops;
        const auto one = GrassmannElement::one(2);
        result.cases.push_back({"berezin S(1)",
                                std::abs(one.berezin_average(ops) - Complex(1.0)),
                                one.berezin_average(ops) == Complex(1.0)});

        GrassmannElement zz(2);
        zz.set_coeff(0b11, Complex(1.0));
        result.cases.push_back({"berezin S(z_1 z*_1)",
                                std::abs(zz.berezin_average(ops) - Complex(1.0)),
                                zz.berezin_average(ops) == Complex(1.0)});

        GrassmannElement z(2);
        z.set_coeff(0b01, Complex(1.0));
        result.cases.push_back({"berezin S(z_1)", std::abs(z.berezin_average(ops)),
                                z.berezin_average(ops) == Complex(0.0)});

        GrassmannElement zs(2);
        zs.set_coeff(0b10, Complex(1.0));
        result.cases.push_back({"berezin S(z*_1)",
                                std::abs(zs.berezin_average(ops)),
                                zs.berezin_average(ops) == Complex(0.0)});

        GrassmannElement pairs(2);
        pairs.set_coeff(0b1111, Complex(1.0));
        result.cases.push_back({"berezin S(z_1 z*_1 z_2 z*_2)",
                                std::abs(pairs.berezin_average(ops) - Complex(1.0)),
                                pairs.berezin_average(ops) == Complex(1.0)});
    }

    return result;
}

SuiteResult run_oracle_small(int seed_count) {
    SuiteResult result;
    result.suite = "oracle-small";
    result.tolerance = kOracleTol;
    for (const Statistics stat : {Statistics::Boson, Statistics::Fermion}) {
        for (int seed = 0; seed < seed_count; ++seed) {
            const Instance inst = small_random_instance(seed, stat);
            const Complex engine_value = expectation(inst).value;
            const Complex oracle_value = oracles::brute_force_expectation(
                inst.bra, inst.ket, inst.op.dense());
            CaseResult c;
            c.name = std::string(to_string(stat)) + " seed " + std::to_string(seed);
            c.error = relative_error(engine_value, oracle_value);
            c.pass = c.error <= kOracleTol;
            result.cases.push_back(c);
        }
    }
    return result;
}

SuiteResult run_permanent(int seed_count) {
    SuiteResult result;
    result.suite = "permanent";
    result.tolerance = kExactFamilyTol;
    for (int seed = 0; seed < seed_count; ++seed) {
        std::mt19937_64 rng(seed * 0x2545f4914f6cdd1dULL + 17);
        std::uniform_int_distribution<int> n_dist(2, 12);
        std::uniform_int_distribution<int> k_dist(1, 3);
        const int n = n_dist(rng);
        const int k = k_dist(rng);
        const CMatrix u = random_matrix(n, k, rng);
        const CMatrix v = random_matrix(k, n, rng);

        const Complex engine_value = permanent_rank_shifted(u, v).value;
        const Complex oracle_value =
            oracles::ryser_permanent(CMatrix::Identity(n, n) + u * v);
        CaseResult c;
        c.name = "seed " + std::to_string(seed) + " N=" + std::to_string(n) +
                 " k=" + std::to_string(k);
        c.error = relative_error(engine_value, oracle_value);
        c.pass = c.error <= kExactFamilyTol;
        result.cases.push_back(c);
    }
    return result;
}

SuiteResult run_determinant(int seed_count) {
    SuiteResult result;
    result.suite = "determinant";
    result.tolerance = kExactFamilyTol;
    for (int seed = 0; seed < seed_count; ++seed) {
        std::mt19937_64 rng(seed * 0xda942042e4dd58b5ULL + 5);
        std::uniform_int_distribution<int> n_dist(2, 12);
        std::uniform_int_distribution<int> k_dist(1, 3);
        const int n = n_dist(rng);
        const int k = k_dist(rng);
        const CMatrix u = random_matrix(n, k, rng);
        const CMatrix v = random_matrix(k, n, rng);

        Instance inst;
        inst.bra.statistics = Statistics::Fermion;
        for (int mu = 0; mu < n; ++mu) {
            FactorState f;
            f.d = 1;
            f.statistics = Statistics::Fermion;
            f.terms[{1}] = Complex(1.0);
            inst.bra.factors.push_back(std::move(f));
        }
        inst.op.u = u;
        inst.op.v = v;
        inst = validate_instance(std::move(inst));

        const Complex engine_value = expectation(inst).value;
        const Complex dense_value =
            oracles::dense_determinant(CMatrix::Identity(n, n) + u * v);
        const Complex sylvester_value = determinant_fast(u, v);

        CaseResult c;
        c.name = "seed " + std::to_string(seed) + " N=" + std::to_string(n) +
                 " k=" + std::to_string(k);
        c.error = std::max(relative_error(engine_value, dense_value),
                           relative_error(sylvester_value, dense_value));
        c.pass = c.error <= kExactFamilyTol;
        result.cases.push_back(c);
    }
    return result;
}

SuiteResult run_normal_ordered(int seed_count) {
    SuiteResult result;
    result.suite = "normal-ordered";
    result.tolerance = kNormalOrderedTol;
    for (const Statistics stat : {Statistics::Boson, Statistics::Fermion}) {
        for (int seed = 0; seed < seed_count; ++seed) {
            std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 99);
            const CMatrix a = random_matrix(2, 2, rng);
            const double residual =
                oracles::normal_ordered_expansion_check(a, stat, 3);
            CaseResult c;
            c.name = std::string(to_string(stat)) + " seed " + std::to_string(seed);
            c.error = residual;
            c.pass = residual <= kNormalOrderedTol;
            result.cases.push_back(c);
        }
    }
    return result;
}

SuiteResult run_conjugation(int seed_count) {
    SuiteResult result;
    result.suite = "conjugation";
    result.tolerance = kOracleTol;
    for (const Statistics stat : {Statistics::Boson, Statistics::Fermion}) {
        for (int seed = 0; seed < seed_count; ++seed) {
            // Odd seeds only: bra must equal ket for this symmetry.
            Instance inst = small_random_instance(2 * seed + 1, stat);
            const Complex forward = expectation(inst).value;

            Instance swapped = inst;
            swapped.op.u = inst.op.v.adjoint();
            swapped.op.v = inst.op.u.adjoint();
            const Complex backward = expectation(swapped).value;

            CaseResult c;
            c.name = std::string(to_string(stat)) + " seed " + std::to_string(seed);
            c.error = relative_error(std::conj(backward), forward);
            c.pass = c.error <= kOracleTol;
            result.cases.push_back(c);
        }
    }
    return result;
}

std::vector<std::string> suite_names() {
    return {"moments",        "oracle-small", "permanent",
            "determinant",    "normal-ordered", "conjugation"};
}

SuiteResult run_suite(const std::string& name, int seed_count) {
    if (name == "moments") return run_moments();
    if (name == "oracle-small") return run_oracle_small(seed_count);
    if (name == "permanent") return run_permanent(seed_count);
    if (name == "determinant") return run_determinant(seed_count);
    if (name == "normal-ordered") return run_normal_ordered(seed_count);
    if (name == "conjugation") return run_conjugation(seed_count);
    throw ValidationError(ValidationError::Kind::BadField,
                          "unknown verification suite '" + name + "'");
}

}  // namespace verify
}  // namespace fockrank
