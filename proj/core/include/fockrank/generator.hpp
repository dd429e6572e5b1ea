#pragma once

#include <cstdint>

#include "fockrank/model.hpp"

namespace fockrank {

/// Parameters for the deterministic instance generator.  The same parameter
/// set always produces the same instance (and so the same serialized file).
struct GenParams {
    std::uint64_t seed = 0;
    int blocks = 1;        // N
    int d = 1;             // modes per block
    int k = 1;             // operator rank
    Statistics statistics = Statistics::Boson;
    int n_max = 1;         // per-factor particle bound
    bool single_particle = false;  // the permanent/determinant family
    bool distinct_bra_ket = false;
};

/// Draw order: bra blocks (amplitudes in occupation-enumeration order), ket
/// blocks when distinct, then u row-major, then v row-major; every complex
/// number is re then im, uniform on [-1, 1].  Factor amplitudes are
/// normalized per factor.  Throws ValidationError for impossible parameters
/// (e.g. fermionic n_max > d).
Instance generate_instance(const GenParams& params);

}  // namespace fockrank
