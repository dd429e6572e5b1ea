#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "fockrank/errors.hpp"
#include "fockrank/scalar.hpp"

namespace fockrank {

enum class Statistics { Boson, Fermion };

inline const char* to_string(Statistics s) {
    return s == Statistics::Boson ? "boson" : "fermion";
}

using OccVector = std::vector<int>;
using CMatrix = Eigen::MatrixXcd;

/// A finite bosonic or fermionic state on d modes.  `terms` maps occupation
/// vectors to amplitudes in the normalized occupation basis: the vector n
/// denotes prod_i (a†_i)^{n_i}/sqrt(n_i!) |vac>.  Fermionic creation strings
/// are ordered by ascending mode index.
struct FactorState {
    int d = 0;
    Statistics statistics = Statistics::Boson;
    std::map<OccVector, Complex> terms;

    /// Largest total occupation over terms (0 for the zero state).
    int max_particles() const {
        int n_max = 0;
        for (const auto& [occ, amp] : terms) {
            int total = 0;
            for (int n : occ) total += n;
            n_max = std::max(n_max, total);
        }
        return n_max;
    }

    bool is_zero() const { return terms.empty(); }
};

/// Sum over terms of |amplitude|^2.  The standard inner-product norm in the
/// normalized occupation basis; the engine itself never renormalizes.
double state_norm_sq(const FactorState& state);

Complex inner_product(const FactorState& bra, const FactorState& ket);

/// Ordered list of factor states over contiguous blocks of modes.
struct ProductState {
    Statistics statistics = Statistics::Boson;
    std::vector<FactorState> factors;

    int block_count() const { return static_cast<int>(factors.size()); }

    /// Global mode index of the first mode of block mu.
    int mode_offset(int mu) const {
        int off = 0;
        for (int nu = 0; nu < mu; ++nu) off += factors[nu].d;
        return off;
    }

    int total_modes() const { return mode_offset(block_count()); }

    /// Sum over factors of their particle bounds.
    int total_particle_bound() const {
        int total = 0;
        for (const auto& f : factors) total += f.max_particles();
        return total;
    }
};

/// A = u·v with u (M x k) and v (k x M).  The engine never materializes A;
/// only the oracles do.
struct LowRankOperator {
    CMatrix u;  // M x k
    CMatrix v;  // k x M

    int rank() const { return static_cast<int>(u.cols()); }
    int modes() const { return static_cast<int>(u.rows()); }

    CMatrix dense() const { return u * v; }
};

/// Per-block restrictions of u's rows and v's columns.
struct BlockSlices {
    std::vector<CMatrix> u;  // block mu: d_mu x k
    std::vector<CMatrix> v;  // block mu: k x d_mu
};

struct Instance {
    ProductState bra;
    ProductState ket;  // equals bra unless the instance names a distinct ket
    LowRankOperator op;
    bool distinct_bra_ket = false;
};

inline constexpr int kRankCap = 6;

/// Checks every type invariant: matching dimensions, Pauli constraint,
/// finite amplitudes, nonnegative occupations, rank cap.  Drops exact-zero
/// amplitudes.  Throws ValidationError; on success the returned instance
/// satisfies all invariants and is immutable by convention.
Instance validate_instance(Instance raw);

/// Partitions op's rows/columns by the block layout of `layout`.
/// Requires a validated instance, so it cannot fail.
BlockSlices block_slice(const LowRankOperator& op, const ProductState& layout);

}  // namespace fockrank
