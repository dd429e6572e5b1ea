#include "fockrank/model.hpp"

#include <string>

namespace fockrank {

double state_norm_sq(const FactorState& state) {
    double total = 0.0;
    for (const auto& [occ, amp] : state.terms) total += std::norm(amp);
    return total;
}

Complex inner_product(const FactorState& bra, const FactorState& ket) {
    // Iterate the smaller table.
    const auto& small = bra.terms.size() <= ket.terms.size() ? bra : ket;
    const auto& other = bra.terms.size() <= ket.terms.size() ? ket : bra;
    const bool small_is_bra = &small == &bra;
    Complex total = 0.0;
    for (const auto& [occ, amp] : small.terms) {
        auto it = other.terms.find(occ);
        if (it == other.terms.end()) continue;
        total += small_is_bra ? std::conj(amp) * it->second
                              : std::conj(it->second) * amp;
    }
    return total;
}

namespace {

void validate_factor(const FactorState& f, Statistics stat, int block,
                     const char* side) {
    if (f.d <= 0) {
        throw ValidationError(ValidationError::Kind::BadField,
                              std::string(side) + " block " +
                                  std::to_string(block) +
                                  ": mode count d must be positive");
    }
    for (const auto& [occ, amp] : f.terms) {
        if (static_cast<int>(occ.size()) != f.d) {
            throw ValidationError(
                ValidationError::Kind::DimensionMismatch,
                std::string(side) + " block " + std::to_string(block) +
                    ": occupation vector length " +
                    std::to_string(occ.size()) + " != d=" +
                    std::to_string(f.d));
        }
        for (int n : occ) {
            if (n < 0) {
                throw ValidationError(
                    ValidationError::Kind::NegativeOccupation,
                    std::string(side) + " block " + std::to_string(block) +
                        ": negative occupation entry");
            }
            if (stat == Statistics::Fermion && n > 1) {
                throw ValidationError(
                    ValidationError::Kind::PauliViolation,
                    std::string(side) + " block " + std::to_string(block) +
                        ": fermionic occupation entry " + std::to_string(n) +
                        " > 1");
            }
        }
        if (!is_finite(amp)) {
            throw ValidationError(ValidationError::Kind::NonFiniteScalar,
                                  std::string(side) + " block " +
                                      std::to_string(block) +
                                      ": non-finite amplitude");
        }
    }
}

void drop_zero_terms(FactorState& f) {
    for (auto it = f.terms.begin(); it != f.terms.end();) {
        if (it->second == Complex(0.0, 0.0)) {
            it = f.terms.erase(it);
        } else {
            ++it;
        }
    }
}

void validate_state(ProductState& state, const char* side) {
    if (state.factors.empty()) {
        throw ValidationError(ValidationError::Kind::EmptyInstance,
                              std::string(side) + ": no factor blocks");
    }
    for (int mu = 0; mu < state.block_count(); ++mu) {
        auto& f = state.factors[mu];
        if (f.statistics != state.statistics) {
            throw ValidationError(ValidationError::Kind::StatisticsMismatch,
                                  std::string(side) + " block " +
                                      std::to_string(mu) +
                                      ": statistics differ from the product");
        }
        validate_factor(f, state.statistics, mu, side);
        drop_zero_terms(f);
    }
}

void check_matrix_finite(const CMatrix& m, const char* name) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (!is_finite(m(i, j))) {
                throw ValidationError(ValidationError::Kind::NonFiniteScalar,
                                      std::string(name) + "(" +
                                          std::to_string(i) + "," +
                                          std::to_string(j) +
                                          ") is not finite");
            }
        }
    }
}

}  // namespace

Instance validate_instance(Instance raw) {
    validate_state(raw.bra, "bra");
    if (raw.distinct_bra_ket) {
        validate_state(raw.ket, "ket");
        if (raw.ket.statistics != raw.bra.statistics) {
            throw ValidationError(ValidationError::Kind::StatisticsMismatch,
                                  "bra and ket statistics differ");
        }
        if (raw.ket.block_count() != raw.bra.block_count()) {
            throw ValidationError(ValidationError::Kind::DimensionMismatch,
                                  "bra and ket block counts differ");
        }
        for (int mu = 0; mu < raw.bra.block_count(); ++mu) {
            if (raw.ket.factors[mu].d != raw.bra.factors[mu].d) {
                throw ValidationError(
                    ValidationError::Kind::DimensionMismatch,
                    "bra and ket disagree on d of block " + std::to_string(mu));
            }
        }
    } else {
        raw.ket = raw.bra;
    }

    const int modes = raw.bra.total_modes();
    const int k = raw.op.rank();
    if (k <= 0) {
        throw ValidationError(ValidationError::Kind::BadField,
                              "operator rank k must be positive");
    }
    if (k > kRankCap) {
        throw ValidationError(ValidationError::Kind::RankCapExceeded,
                              "operator rank " + std::to_string(k) +
                                  " exceeds cap " + std::to_string(kRankCap));
    }
    if (raw.op.u.rows() != modes) {
        throw ValidationError(ValidationError::Kind::DimensionMismatch,
                              "u has " + std::to_string(raw.op.u.rows()) +
                                  " rows, block layout has " +
                                  std::to_string(modes) + " modes");
    }
    if (raw.op.v.cols() != modes || raw.op.v.rows() != k) {
        throw ValidationError(ValidationError::Kind::DimensionMismatch,
                              "v must be k x M = " + std::to_string(k) + " x " +
                                  std::to_string(modes));
    }
    check_matrix_finite(raw.op.u, "u");
    check_matrix_finite(raw.op.v, "v");
    return raw;
}

BlockSlices block_slice(const LowRankOperator& op, const ProductState& layout) {
    BlockSlices slices;
    const int k = op.rank();
    int offset = 0;
    for (const auto& f : layout.factors) {
        slices.u.push_back(op.u.block(offset, 0, f.d, k));
        slices.v.push_back(op.v.block(0, offset, k, f.d));
        offset += f.d;
    }
    return slices;
}

}  // namespace fockrank
