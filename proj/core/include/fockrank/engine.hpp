#pragma once

#include <cstdint>

#include "fockrank/factor_builder.hpp"
#include "fockrank/model.hpp"

namespace fockrank {

/// Result of one engine run.  op_count is the number of complex multiply-adds
/// spent in the polynomial product stage alone -- the quantity whose growth
/// in N the scaling benchmarks measure; factor construction and the final
/// Gaussian average are tallied separately and excluded from it.
struct ComputationReport {
    Complex value{};
    std::uint64_t op_count = 0;       // product stage
    std::uint64_t average_ops = 0;    // Gaussian / Berezin average
    std::int64_t peak_coefficient_count = 0;
    double wall_time_seconds = 0.0;
    int blocks = 0;  // N
    int rank = 0;    // k
    int degree_cap = 0;  // D (bosonic; 2k in the fermionic case)
    Statistics statistics = Statistics::Boson;
};

struct EngineOptions {
    /// Refuse bosonic runs whose dense coefficient table would exceed this.
    std::int64_t max_table_bytes = std::int64_t{2} << 30;
};

/// <bra| P(1 + u v) |ket> by Gaussian averaging of per-block factor
/// polynomials.  Bosonic cost is O(N^{2k+1}) product-stage multiply-adds;
/// fermionic cost is O(N).
ComputationReport expectation(const Instance& instance,
                              const EngineOptions& options = {});

/// Per(1 + u v) for u (N x k), v (k x N), computed by the bosonic engine on
/// single-particle factors.
ComputationReport permanent_rank_shifted(const CMatrix& u, const CMatrix& v,
                                         const EngineOptions& options = {});

/// det(1_k + v u): the rank-k shortcut for det(1_N + u v).  O(N k^2) for the
/// small matrix product plus a k x k determinant.
Complex determinant_fast(const CMatrix& u, const CMatrix& v);

/// True when every factor of both bra and ket is the d=1 single-particle
/// state {[1] -> 1}, i.e. the instance is in the permanent/determinant
/// family where the Sylvester shortcut applies (fermionic case).
bool is_single_particle_family(const Instance& instance);

}  // namespace fockrank
