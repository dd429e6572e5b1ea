#include "fockrank/oracles.hpp"

#include <Eigen/LU>
#include <bit>
#include <cmath>
#include <string>

#include "fockrank/errors.hpp"

namespace fockrank {
namespace oracles {

namespace {

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

int total_occupation(const OccVector& occ) {
    int total = 0;
    for (int n : occ) total += n;
    return total;
}

// Local ladder helpers on amplitude maps; deliberately separate from the
// engine's factor machinery.
using AmpMap = std::map<OccVector, Complex>;

void create_into(AmpMap& out, const OccVector& occ, Complex amp, int mode,
                 Statistics stat) {
    if (stat == Statistics::Fermion && occ[mode] == 1) return;
    OccVector next = occ;
    next[mode] += 1;
    Complex factor;
    if (stat == Statistics::Boson) {
        factor = std::sqrt(static_cast<double>(next[mode]));
    } else {
        int below = 0;
        for (int i = 0; i < mode; ++i) below += occ[i];
        factor = (below & 1) ? -1.0 : 1.0;
    }
    out[next] += amp * factor;
}

void annihilate_into(AmpMap& out, const OccVector& occ, Complex amp, int mode,
                     Statistics stat) {
    if (occ[mode] == 0) return;
    OccVector next = occ;
    next[mode] -= 1;
    Complex factor;
    if (stat == Statistics::Boson) {
        factor = std::sqrt(static_cast<double>(occ[mode]));
    } else {
        int below = 0;
        for (int i = 0; i < mode; ++i) below += occ[i];
        factor = (below & 1) ? -1.0 : 1.0;
    }
    out[next] += amp * factor;
}

AmpMap apply_dressed_creator(const CMatrix& U, int j, const AmpMap& in,
                             Statistics stat) {
    // b†_j = sum_i U_ij a†_i
    AmpMap out;
    const int modes = static_cast<int>(U.rows());
    for (const auto& [occ, amp] : in) {
        if (amp == Complex(0.0)) continue;
        for (int i = 0; i < modes; ++i) {
            if (U(i, j) == Complex(0.0)) continue;
            create_into(out, occ, amp * U(i, j), i, stat);
        }
    }
    return out;
}

double sqrt_factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return std::sqrt(f);
}

}  // namespace

FockBasis::FockBasis(Statistics statistics, int modes, int particle_cap)
    : statistics_(statistics), modes_(modes), particle_cap_(particle_cap) {
    OccVector cur(modes, 0);
    for (int total = 0; total <= particle_cap; ++total) {
        enumerate_occupations(statistics, modes, total, cur, 0, states_);
    }
    for (int i = 0; i < static_cast<int>(states_.size()); ++i) {
        index_[states_[i]] = i;
    }
}

int FockBasis::index_of(const OccVector& occ) const {
    auto it = index_.find(occ);
    return it == index_.end() ? -1 : it->second;
}

Complex ryser_permanent(const CMatrix& matrix) {
    const int n = static_cast<int>(matrix.rows());
    if (n != matrix.cols()) {
        throw ValidationError(ValidationError::Kind::DimensionMismatch,
                              "permanent needs a square matrix");
    }
    if (n > kMaxRyserSize) {
        throw ResourceGuardError("Ryser permanent capped at size " +
                                 std::to_string(kMaxRyserSize));
    }
    if (n == 0) return Complex(1.0);

    // Gray-code subset walk; row_sums holds sum_{j in S} M(i, j).
    std::vector<Complex> row_sums(n, Complex(0.0));
    Complex total(0.0);
    std::uint32_t prev = 0;
    const std::uint32_t subsets = std::uint32_t{1} << n;
    for (std::uint32_t s = 1; s < subsets; ++s) {
        const std::uint32_t gray = s ^ (s >> 1);
        const std::uint32_t changed = gray ^ prev;
        const int j = std::countr_zero(changed);
        const bool added = gray & changed;
        for (int i = 0; i < n; ++i) {
            row_sums[i] += added ? matrix(i, j) : -matrix(i, j);
        }
        prev = gray;
        Complex prod(1.0);
        for (int i = 0; i < n; ++i) prod *= row_sums[i];
        const int popcount = std::popcount(gray);
        total += ((n - popcount) & 1) ? -prod : prod;
    }
    return total;
}

Complex dense_determinant(const CMatrix& matrix) {
    if (matrix.rows() != matrix.cols()) {
        throw ValidationError(ValidationError::Kind::DimensionMismatch,
                              "determinant needs a square matrix");
    }
    if (matrix.rows() == 0) return Complex(1.0);
    return Eigen::PartialPivLU<CMatrix>(matrix).determinant();
}

FockVector apply_multiplicative_extension(const CMatrix& U, const FockVector& psi) {
    const FockBasis& basis = *psi.basis;
    const Statistics stat = basis.statistics();
    FockVector out;
    out.basis = psi.basis;
    out.amps = Eigen::VectorXcd::Zero(basis.size());

    for (int s = 0; s < basis.size(); ++s) {
        const Complex amp = psi.amps(s);
        if (amp == Complex(0.0)) continue;
        const OccVector& occ = basis.at(s);

        // Creation string modes in ascending order with multiplicity.
        std::vector<int> string;
        double norm = 1.0;
        for (int j = 0; j < basis.modes(); ++j) {
            for (int r = 0; r < occ[j]; ++r) string.push_back(j);
            norm *= sqrt_factorial(occ[j]);
        }

        AmpMap current;
        current[OccVector(basis.modes(), 0)] = amp / norm;
        // Rightmost operator of the string acts first.
        for (auto it = string.rbegin(); it != string.rend(); ++it) {
            current = apply_dressed_creator(U, *it, current, stat);
        }
        for (const auto& [result_occ, c] : current) {
            const int idx = basis.index_of(result_occ);
            if (idx >= 0) out.amps(idx) += c;
        }
    }
    return out;
}

CMatrix multiplicative_extension_matrix(const CMatrix& U, const FockBasis& basis) {
    CMatrix out = CMatrix::Zero(basis.size(), basis.size());
    for (int j = 0; j < basis.size(); ++j) {
        FockVector e;
        e.basis = &basis;
        e.amps = Eigen::VectorXcd::Zero(basis.size());
        e.amps(j) = Complex(1.0);
        out.col(j) = apply_multiplicative_extension(U, e).amps;
    }
    return out;
}

FockVector embed_product_state(const ProductState& state, const FockBasis& basis) {
    AmpMap current;
    current[OccVector{}] = Complex(1.0);
    for (const auto& factor : state.factors) {
        AmpMap next;
        for (const auto& [prefix, amp] : current) {
            for (const auto& [occ, factor_amp] : factor.terms) {
                OccVector glued = prefix;
                glued.insert(glued.end(), occ.begin(), occ.end());
                next[std::move(glued)] = amp * factor_amp;
            }
        }
        current = std::move(next);
    }

    FockVector out;
    out.basis = &basis;
    out.amps = Eigen::VectorXcd::Zero(basis.size());
    for (const auto& [occ, amp] : current) {
        const int idx = basis.index_of(occ);
        if (idx < 0) {
            throw ResourceGuardError(
                "embedded component exceeds the oracle basis particle cap");
        }
        out.amps(idx) += amp;
    }
    return out;
}

Complex brute_force_expectation(const ProductState& bra, const ProductState& ket,
                                const CMatrix& a_dense) {
    const int modes = bra.total_modes();
    if (modes > kMaxBruteForceModes) {
        throw ResourceGuardError("brute force capped at " +
                                 std::to_string(kMaxBruteForceModes) + " modes");
    }
    const int particles =
        std::max(bra.total_particle_bound(), ket.total_particle_bound());
    if (particles > kMaxBruteForceParticles) {
        throw ResourceGuardError("brute force capped at " +
                                 std::to_string(kMaxBruteForceParticles) +
                                 " particles");
    }

    const FockBasis basis(bra.statistics, modes, particles);
    const FockVector bra_vec = embed_product_state(bra, basis);
    const FockVector ket_vec = embed_product_state(ket, basis);
    const CMatrix u_matrix = CMatrix::Identity(modes, modes) + a_dense;
    const FockVector evolved = apply_multiplicative_extension(u_matrix, ket_vec);
    return bra_vec.amps.adjoint() * evolved.amps;
}

double normal_ordered_expansion_check(const CMatrix& a_dense,
                                      Statistics statistics, int particle_cap) {
    const int modes = static_cast<int>(a_dense.rows());
    if (modes > kMaxNormalOrderedModes) {
        throw ResourceGuardError("normal-ordered check capped at " +
                                 std::to_string(kMaxNormalOrderedModes) +
                                 " modes");
    }
    if (particle_cap > kMaxNormalOrderedParticles) {
        throw ResourceGuardError("normal-ordered check capped at " +
                                 std::to_string(kMaxNormalOrderedParticles) +
                                 " particles");
    }

    const FockBasis basis(statistics, modes, particle_cap);
    const CMatrix lhs = multiplicative_extension_matrix(
        CMatrix::Identity(modes, modes) + a_dense, basis);

    // sum_r (1/r!) :(a† A a)^r:.  The normal-ordered r-th power is
    //   sign_r * sum_{i's, j's} prod_m A(i_m, j_m)
    //            a†_{i_1}..a†_{i_r} a_{j_1}..a_{j_r}
    // with sign_r = (-1)^{r(r-1)/2} for fermions (the reordering parity).
    CMatrix rhs = CMatrix::Identity(basis.size(), basis.size());
    double r_factorial = 1.0;
    for (int r = 1; r <= particle_cap; ++r) {
        r_factorial *= r;
        const double sign_r =
            (statistics == Statistics::Fermion && ((r * (r - 1) / 2) & 1)) ? -1.0
                                                                           : 1.0;
        std::vector<int> is(r, 0), js(r, 0);
        CMatrix term = CMatrix::Zero(basis.size(), basis.size());
        // Iterate all i-vectors and j-vectors.
        const auto advance = [&](std::vector<int>& digits) {
            for (int pos = r - 1; pos >= 0; --pos) {
                if (++digits[pos] < modes) return true;
                digits[pos] = 0;
            }
            return false;
        };
        do {
            std::fill(js.begin(), js.end(), 0);
            do {
                Complex weight(1.0);
                for (int m = 0; m < r; ++m) weight *= a_dense(is[m], js[m]);
                if (weight == Complex(0.0)) continue;
                // Apply to every basis column: annihilators right to left
                // (j_r first), then creators right to left (i_r first).
                for (int col = 0; col < basis.size(); ++col) {
                    AmpMap cur;
                    cur[basis.at(col)] = Complex(1.0);
                    for (int m = r - 1; m >= 0 && !cur.empty(); --m) {
                        AmpMap next;
                        for (const auto& [occ, amp] : cur) {
                            annihilate_into(next, occ, amp, js[m], statistics);
                        }
                        cur = std::move(next);
                    }
                    for (int m = r - 1; m >= 0 && !cur.empty(); --m) {
                        AmpMap next;
                        for (const auto& [occ, amp] : cur) {
                            create_into(next, occ, amp, is[m], statistics);
                        }
                        cur = std::move(next);
                    }
                    for (const auto& [occ, amp] : cur) {
                        const int row = basis.index_of(occ);
                        if (row >= 0) term(row, col) += weight * amp;
                    }
                }
            } while (advance(js));
        } while (advance(is));
        rhs += (sign_r / r_factorial) * term;
    }

    return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace oracles
}  // namespace fockrank
