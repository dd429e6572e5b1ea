#include "fockrank/generator.hpp"

#include <cmath>
#include <random>
#include <string>

namespace fockrank {

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

std::vector<OccVector> occupations_up_to(Statistics stat, int modes, int n_max) {
    std::vector<OccVector> out;
    OccVector cur(modes, 0);
    for (int total = 0; total <= n_max; ++total) {
        enumerate_occupations(stat, modes, total, cur, 0, out);
    }
    return out;
}

FactorState random_factor(Statistics stat, int d, int n_max,
                          std::mt19937_64& rng,
                          std::uniform_real_distribution<double>& unit) {
    FactorState f;
    f.d = d;
    f.statistics = stat;
    for (const auto& occ : occupations_up_to(stat, d, n_max)) {
        const double re = unit(rng);
        const double im = unit(rng);
        f.terms[occ] = Complex(re, im);
    }
    const double norm = std::sqrt(state_norm_sq(f));
    for (auto& [occ, amp] : f.terms) amp /= norm;
    return f;
}

FactorState single_particle_factor(Statistics stat, int d) {
    FactorState f;
    f.d = d;
    f.statistics = stat;
    OccVector occ(d, 0);
    occ[0] = 1;
    f.terms[occ] = Complex(1.0);
    return f;
}

}  // namespace

Instance generate_instance(const GenParams& params) {
    if (params.blocks < 1 || params.d < 1 || params.k < 1 || params.n_max < 0) {
        throw ValidationError(ValidationError::Kind::BadField,
                              "generator parameters must be positive");
    }
    if (params.statistics == Statistics::Fermion && params.n_max > params.d) {
        throw ValidationError(
            ValidationError::Kind::PauliViolation,
            "fermionic n_max " + std::to_string(params.n_max) +
                " exceeds d=" + std::to_string(params.d) + " modes");
    }

    std::mt19937_64 rng(params.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    Instance inst;
    inst.bra.statistics = params.statistics;
    for (int mu = 0; mu < params.blocks; ++mu) {
        inst.bra.factors.push_back(
            params.single_particle
                ? single_particle_factor(params.statistics, params.d)
                : random_factor(params.statistics, params.d, params.n_max, rng,
                                unit));
    }
    if (params.distinct_bra_ket) {
        inst.distinct_bra_ket = true;
        inst.ket.statistics = params.statistics;
        for (int mu = 0; mu < params.blocks; ++mu) {
            inst.ket.factors.push_back(
                params.single_particle
                    ? single_particle_factor(params.statistics, params.d)
                    : random_factor(params.statistics, params.d, params.n_max,
                                    rng, unit));
        }
    }

    const int modes = params.blocks * params.d;
    inst.op.u.resize(modes, params.k);
    for (int i = 0; i < modes; ++i) {
        for (int a = 0; a < params.k; ++a) {
            const double re = unit(rng);
            const double im = unit(rng);
            inst.op.u(i, a) = Complex(re, im);
        }
    }
    inst.op.v.resize(params.k, modes);
    for (int a = 0; a < params.k; ++a) {
        for (int i = 0; i < modes; ++i) {
            const double re = unit(rng);
            const double im = unit(rng);
            inst.op.v(a, i) = Complex(re, im);
        }
    }

    return validate_instance(std::move(inst));
}

}  // namespace fockrank
