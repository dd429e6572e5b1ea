#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "fockrank/model.hpp"

namespace fockrank {
namespace oracles {

/// Size caps for the exponential-cost oracles.  Hard preconditions: a
/// truncated oracle would be a wrong oracle, so oversized requests throw.
inline constexpr int kMaxRyserSize = 20;
inline constexpr int kMaxBruteForceParticles = 6;
inline constexpr int kMaxBruteForceModes = 8;
inline constexpr int kMaxNormalOrderedModes = 6;
inline constexpr int kMaxNormalOrderedParticles = 4;

/// Enumerated occupation basis of the truncated Fock space: all occupation
/// vectors with total <= particle_cap (fermionic entries <= 1), ordered by
/// total particle number, then lexicographically.
class FockBasis {
public:
    FockBasis(Statistics statistics, int modes, int particle_cap);

    Statistics statistics() const { return statistics_; }
    int modes() const { return modes_; }
    int particle_cap() const { return particle_cap_; }
    int size() const { return static_cast<int>(states_.size()); }

    const OccVector& at(int index) const { return states_[index]; }
    int index_of(const OccVector& occ) const;

private:
    Statistics statistics_;
    int modes_;
    int particle_cap_;
    std::vector<OccVector> states_;
    std::map<OccVector, int> index_;
};

struct FockVector {
    const FockBasis* basis = nullptr;
    Eigen::VectorXcd amps;
};

/// Exact permanent by Ryser's inclusion-exclusion formula with Gray-code
/// subset updates, O(2^N N).  Throws beyond kMaxRyserSize.
Complex ryser_permanent(const CMatrix& matrix);

/// Determinant via partial-pivoting LU (singular input gives 0).
Complex dense_determinant(const CMatrix& matrix);

/// P(U) applied by definition: each basis component is rewritten as a
/// creation string on the vacuum, each a†_j is substituted by sum_i U_ij a†_i,
/// and the product is expanded and re-collected with normalization and
/// fermionic reordering signs.  Never mixes total particle numbers.
FockVector apply_multiplicative_extension(const CMatrix& U, const FockVector& psi);

/// Dense matrix of P(U) on the truncated basis (column j = P(U) e_j).
CMatrix multiplicative_extension_matrix(const CMatrix& U, const FockBasis& basis);

/// Embeds a product state into the global M-mode basis.  Fermionic
/// cross-block signs vanish because per-block creation strings concatenate
/// in ascending global mode order.
FockVector embed_product_state(const ProductState& state, const FockBasis& basis);

/// <bra| P(1 + A) |ket> computed entirely on the truncated Fock space.
Complex brute_force_expectation(const ProductState& bra, const ProductState& ket,
                                const CMatrix& a_dense);

/// Max absolute entry difference between P(1+A) and the terminating
/// normal-ordered series sum_r (1/r!) :(a† A a)^r: on the truncated basis.
double normal_ordered_expansion_check(const CMatrix& a_dense,
                                      Statistics statistics, int particle_cap);

}  // namespace oracles
}  // namespace fockrank
