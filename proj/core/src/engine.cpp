#include "fockrank/engine.hpp"

#include <Eigen/LU>
#include <chrono>
#include <string>

namespace fockrank {

namespace {

using Clock = std::chrono::steady_clock;

bool factor_is_single_particle(const FactorState& f) {
    if (f.d != 1 || f.terms.size() != 1) return false;
    const auto& [occ, amp] = *f.terms.begin();
    return occ == OccVector{1} && amp == Complex(1.0);
}

ComputationReport expectation_boson(const Instance& inst,
                                    const EngineOptions& options) {
    const auto start = Clock::now();
    const int n_blocks = inst.bra.block_count();
    const int k = inst.op.rank();
    const int cap_m = inst.bra.total_particle_bound();
    const int cap_n = inst.ket.total_particle_bound();
    const int deg_cap = std::max(cap_m, cap_n);

    const std::int64_t table_entries =
        MonomialOrder::count_multi_indices(k, cap_m) *
        MonomialOrder::count_multi_indices(k, cap_n);
    const std::int64_t table_bytes =
        table_entries * static_cast<std::int64_t>(sizeof(Complex));
    if (table_bytes > options.max_table_bytes) {
        throw ResourceGuardError(
            "bosonic coefficient table for N=" + std::to_string(n_blocks) +
            ", k=" + std::to_string(k) + ", D=" + std::to_string(deg_cap) +
            " needs " + std::to_string(table_bytes) +
            " bytes, over the guard of " +
            std::to_string(options.max_table_bytes));
    }

    auto order = std::make_shared<const MonomialOrder>(k, deg_cap);
    const BlockSlices slices = block_slice(inst.op, inst.bra);

    BidegreePoly product = BidegreePoly::one(order, cap_m, cap_n);
    OpCounter product_ops;
    for (int mu = 0; mu < n_blocks; ++mu) {
        const auto& bra_f = inst.bra.factors[mu];
        const auto& ket_f = inst.ket.factors[mu];
        BidegreePoly factor =
            factor_is_single_particle(bra_f) && factor_is_single_particle(ket_f)
                ? build_single_boson_factor(slices.u[mu].row(0),
                                            slices.v[mu].col(0), order)
                : build_boson_factor(bra_f, ket_f, slices.u[mu], slices.v[mu],
                                     order, bra_f.max_particles(),
                                     ket_f.max_particles());
        product.multiply_in_place(factor.nonzero_terms(), factor.deg_m(),
                                  factor.deg_n(), product_ops);
    }

    OpCounter average_ops;
    const Complex value = product.gaussian_average(average_ops);

    ComputationReport report;
    report.value = value;
    report.op_count = product_ops.mul_adds;
    report.average_ops = average_ops.mul_adds;
    report.peak_coefficient_count = product.table_size();
    report.blocks = n_blocks;
    report.rank = k;
    report.degree_cap = deg_cap;
    report.statistics = Statistics::Boson;
    report.wall_time_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

ComputationReport expectation_fermion(const Instance& inst,
                                      const EngineOptions&) {
    const auto start = Clock::now();
    const int n_blocks = inst.bra.block_count();
    const int k = inst.op.rank();
    const BlockSlices slices = block_slice(inst.op, inst.bra);

    std::vector<GrassmannElement> factors;
    factors.reserve(n_blocks);
    bool all_even = true;
    for (int mu = 0; mu < n_blocks; ++mu) {
        factors.push_back(build_fermion_factor(inst.bra.factors[mu],
                                               inst.ket.factors[mu],
                                               slices.u[mu], slices.v[mu]));
        all_even = all_even && factors.back().is_even();
    }

    OpCounter product_ops;
    GrassmannElement product = GrassmannElement::one(k);
    if (all_even) {
        // Even factors commute past everything; the plain ascending product
        // of the factor polynomials is exact.
        for (int mu = 0; mu < n_blocks; ++mu) {
            product.multiply_in_place_right(factors[mu], product_ops);
        }
    } else {
        // Parity-mixed factors: odd operator terms of block mu anticommute
        // past the ket components of earlier blocks, which shows up as a
        // (-1)^{N_hat} weight on those kets.  Fold right-to-left, feeding the
        // running product's even part through the plain factor and its odd
        // part through the parity-twisted one.  Operand order stays
        // ascending in mu.
        for (int mu = n_blocks - 1; mu >= 0; --mu) {
            const GrassmannElement twisted = build_fermion_factor(
                inst.bra.factors[mu], inst.ket.factors[mu], slices.u[mu],
                slices.v[mu], /*ket_parity_twist=*/true);
            GrassmannElement even = product.even_part();
            GrassmannElement odd = product.odd_part();
            even.multiply_in_place_left(factors[mu], product_ops);
            odd.multiply_in_place_left(twisted, product_ops);
            even.add_scaled(odd, Complex(1.0));
            product = std::move(even);
        }
    }

    OpCounter average_ops;
    const Complex value = product.berezin_average(average_ops);

    ComputationReport report;
    report.value = value;
    report.op_count = product_ops.mul_adds;
    report.average_ops = average_ops.mul_adds;
    report.peak_coefficient_count =
        static_cast<std::int64_t>(product.mask_count());
    report.blocks = n_blocks;
    report.rank = k;
    report.degree_cap = 2 * k;
    report.statistics = Statistics::Fermion;
    report.wall_time_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    return report;
}

}  // namespace

ComputationReport expectation(const Instance& instance,
                              const EngineOptions& options) {
    return instance.bra.statistics == Statistics::Boson
               ? expectation_boson(instance, options)
               : expectation_fermion(instance, options);
}

bool is_single_particle_family(const Instance& instance) {
    for (const auto& f : instance.bra.factors) {
        if (!factor_is_single_particle(f)) return false;
    }
    for (const auto& f : instance.ket.factors) {
        if (!factor_is_single_particle(f)) return false;
    }
    return true;
}

ComputationReport permanent_rank_shifted(const CMatrix& u, const CMatrix& v,
                                         const EngineOptions& options) {
    Instance inst;
    inst.bra.statistics = Statistics::Boson;
    const int n_blocks = static_cast<int>(u.rows());
    for (int mu = 0; mu < n_blocks; ++mu) {
        FactorState f;
        f.d = 1;
        f.statistics = Statistics::Boson;
        f.terms[{1}] = Complex(1.0);
        inst.bra.factors.push_back(std::move(f));
    }
    inst.op.u = u;
    inst.op.v = v;
    inst = validate_instance(std::move(inst));
    return expectation(inst, options);
}

Complex determinant_fast(const CMatrix& u, const CMatrix& v) {
    const int k = static_cast<int>(u.cols());
    const CMatrix small = CMatrix::Identity(k, k) + v * u;
    return Eigen::PartialPivLU<CMatrix>(small).determinant();
}

}  // namespace fockrank
