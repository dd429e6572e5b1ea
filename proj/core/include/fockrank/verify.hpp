#pragma once

#include <string>
#include <vector>

#include "fockrank/model.hpp"

namespace fockrank {
namespace verify {

struct CaseResult {
    std::string name;
    double error = 0.0;
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    double tolerance = 0.0;
    std::vector<CaseResult> cases;

    bool pass() const {
        for (const auto& c : cases) {
            if (!c.pass) return false;
        }
        return !cases.empty();
    }
    double max_error() const {
        double worst = 0.0;
        for (const auto& c : cases) worst = std::max(worst, c.error);
        return worst;
    }
};

/// Gaussian moment table m, n <= 6 plus the Berezin counterpart, exact.
SuiteResult run_moments();

/// Engine vs truncated-Fock brute force, both statistics, random small
/// instances including distinct bra/ket and non-identical factors.
SuiteResult run_oracle_small(int seed_count);

/// Single-boson factors vs Ryser's permanent, N <= 12, k <= 3.
SuiteResult run_permanent(int seed_count);

/// Single-fermion factors vs dense det(1+uv) and the Sylvester k x k form.
SuiteResult run_determinant(int seed_count);

/// P(1+A) vs the terminating normal-ordered exponential series.
SuiteResult run_normal_ordered(int seed_count);

/// expectation(u, v) equals conj(expectation(v†, u†)) for bra = ket.
SuiteResult run_conjugation(int seed_count);

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, int seed_count);

/// Deterministic random instance in the oracle-tractable regime (N <= 4,
/// d <= 2, per-factor particles <= 2, total <= 6, k <= 2).  Even seeds get a
/// distinct ket.  Shared by the verification suites and the acceptance tests.
Instance small_random_instance(std::uint64_t seed, Statistics statistics);

}  // namespace verify
}  // namespace fockrank
