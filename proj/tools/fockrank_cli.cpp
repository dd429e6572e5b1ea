// fockrank: expectation values of rank-k-shifted multiplicative extensions
// in bosonic/fermionic product states, with brute-force oracles and scaling
// benchmarks.
//
// Exit codes: 0 ok, 1 verification failure, 2 input error, 3 resource guard.

#include <CLI11.hpp>
#include <cstdio>
#include <string>
#include <vector>

#include "fockrank/engine.hpp"
#include "fockrank/generator.hpp"
#include "fockrank/instance_io.hpp"
#include "fockrank/oracles.hpp"
#include "fockrank/slope_fit.hpp"
#include "fockrank/verify.hpp"

namespace {

using namespace fockrank;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitResourceGuard = 3;

void print_report(const ComputationReport& r, const std::string& path_used) {
    std::printf("value: %.17g %+.17gi\n", r.value.real(), r.value.imag());
    std::printf("op_count: %llu        (product-stage complex multiply-adds)\n",
                static_cast<unsigned long long>(r.op_count));
    std::printf("average_ops: %llu\n",
                static_cast<unsigned long long>(r.average_ops));
    std::printf("peak_coefficients: %lld\n",
                static_cast<long long>(r.peak_coefficient_count));
    std::printf("wall_seconds: %.6g\n", r.wall_time_seconds);
    std::printf("N: %d  k: %d  D: %d  statistics: %s\n", r.blocks, r.rank,
                r.degree_cap, to_string(r.statistics));
    std::printf("path: %s\n", path_used.c_str());
}

int cmd_compute(const std::string& file, const std::string& fast_path) {
    const Instance inst = load_instance(file);

    const bool sylvester_legal = inst.bra.statistics == Statistics::Fermion &&
                                 is_single_particle_family(inst);
    bool use_sylvester = false;
    if (fast_path == "sylvester") {
        if (!sylvester_legal) {
            throw ValidationError(
                ValidationError::Kind::BadField,
                "--fast-path sylvester needs a fermionic instance whose "
                "factors are all the d=1 single-particle state");
        }
        use_sylvester = true;
    } else if (fast_path == "auto") {
        use_sylvester = sylvester_legal;
    }

    if (use_sylvester) {
        const auto start = std::chrono::steady_clock::now();
        const Complex value = determinant_fast(inst.op.u, inst.op.v);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        std::printf("value: %.17g %+.17gi\n", value.real(), value.imag());
        std::printf("wall_seconds: %.6g\n", wall);
        std::printf("N: %d  k: %d  statistics: %s\n", inst.bra.block_count(),
                    inst.op.rank(), to_string(inst.bra.statistics));
        std::printf("path: sylvester\n");
        return kExitOk;
    }

    print_report(expectation(inst), "engine");
    return kExitOk;
}

int cmd_oracle(const std::string& file) {
    const Instance inst = load_instance(file);
    const Complex value =
        oracles::brute_force_expectation(inst.bra, inst.ket, inst.op.dense());
    std::printf("value: %.17g %+.17gi\n", value.real(), value.imag());
    std::printf("path: brute-force\n");
    return kExitOk;
}

int cmd_gen(const GenParams& params, const std::string& out) {
    const Instance inst = generate_instance(params);
    if (out.empty()) {
        std::fputs(serialize_instance(inst).c_str(), stdout);
    } else {
        save_instance(inst, out);
        std::fprintf(stderr, "wrote %s (N=%d d=%d k=%d %s)\n", out.c_str(),
                     params.blocks, params.d, params.k,
                     to_string(params.statistics));
    }
    return kExitOk;
}

int cmd_verify(const std::string& suite, int seeds, bool verbose) {
    std::vector<std::string> to_run;
    if (suite == "all") {
        to_run = verify::suite_names();
    } else {
        to_run.push_back(suite);
    }

    bool all_pass = true;
    for (const auto& name : to_run) {
        const verify::SuiteResult result = verify::run_suite(name, seeds);
        all_pass = all_pass && result.pass();
        std::printf("[%s] %-15s max err %.3g  tol %.3g  (%zu cases)\n",
                    result.pass() ? "PASS" : "FAIL", result.suite.c_str(),
                    result.max_error(), result.tolerance, result.cases.size());
        for (const auto& c : result.cases) {
            if (verbose || !c.pass) {
                std::printf("  [%s] %-28s err %.3g\n", c.pass ? "ok" : "FAIL",
                            c.name.c_str(), c.error);
            }
        }
    }
    return all_pass ? kExitOk : kExitVerifyFailure;
}

int cmd_bench(const std::string& stat_name, int k, std::vector<int> ns,
              std::uint64_t seed, const std::string& out) {
    const Statistics stat =
        stat_name == "fermion" ? Statistics::Fermion : Statistics::Boson;

    if (stat == Statistics::Boson) {
        if (k > 2) {
            throw ResourceGuardError(
                "bosonic scaling benchmarks are guarded at k <= 2 (dense "
                "table size); requested k=" + std::to_string(k));
        }
        for (int n : ns) {
            if (n > 256) {
                throw ResourceGuardError(
                    "bosonic scaling benchmarks are guarded at N <= 256; "
                    "requested (N=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ")");
            }
        }
    } else {
        for (int n : ns) {
            if (n > 1000000) {
                throw ResourceGuardError(
                    "fermionic scaling benchmarks are guarded at N <= 1e6; "
                    "requested (N=" + std::to_string(n) +
                    ", k=" + std::to_string(k) + ")");
            }
        }
    }

    std::sort(ns.begin(), ns.end());
    std::vector<BenchRecord> records;
    for (int n : ns) {
        GenParams params;
        params.seed = seed;
        params.blocks = n;
        params.d = 1;
        params.k = k;
        params.statistics = stat;
        params.n_max = 1;
        params.single_particle = true;
        const Instance inst = generate_instance(params);
        const ComputationReport report = expectation(inst);

        BenchRecord rec;
        rec.n = n;
        rec.k = k;
        rec.d = 1;
        rec.statistics = stat;
        rec.deg_cap = report.degree_cap;
        rec.op_count = report.op_count;
        rec.wall_seconds = report.wall_time_seconds;
        rec.value = report.value;
        rec.seed = seed;
        records.push_back(rec);
        std::fprintf(stderr, "N=%-8d op_count=%-14llu wall=%.4gs\n", n,
                     static_cast<unsigned long long>(rec.op_count),
                     rec.wall_seconds);
    }

    if (out.empty()) {
        std::printf("%s\n", kBenchCsvHeader);
        for (const auto& r : records) std::printf("%s\n", to_csv_row(r).c_str());
    } else {
        append_csv(out, records);
        std::fprintf(stderr, "appended %zu records to %s\n", records.size(),
                     out.c_str());
    }

    std::set<int> distinct(ns.begin(), ns.end());
    if (distinct.size() >= 4) {
        const SlopeFit fit = fit_loglog(records);
        const double target = stat == Statistics::Boson ? 2.0 * k + 1.0 : 1.0;
        std::fprintf(stderr,
                     "slope %.4f  intercept %.4f  r2 %.6f  (target %.1f)\n",
                     fit.slope, fit.intercept, fit.r_squared, target);
    } else {
        std::fprintf(stderr, "slope fit skipped: needs >= 4 distinct N\n");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "fockrank: matrix elements <bra|P(1+A)|ket> of rank-k-shifted "
        "multiplicative extensions in finite product states"};
    app.require_subcommand(1);

    // compute
    std::string compute_file;
    std::string fast_path = "auto";
    auto* compute = app.add_subcommand(
        "compute", "Evaluate an instance file with the polynomial engine");
    compute->add_option("file", compute_file, "instance JSON file")->required();
    compute->add_option("--fast-path", fast_path,
                        "auto|engine|sylvester (sylvester: fermionic "
                        "single-particle instances only)")
        ->check(CLI::IsMember({"auto", "engine", "sylvester"}));

    // oracle
    std::string oracle_file;
    auto* oracle = app.add_subcommand(
        "oracle", "Evaluate a small instance by truncated-Fock brute force");
    oracle->add_option("file", oracle_file, "instance JSON file")->required();

    // gen
    GenParams gen_params;
    std::string gen_out;
    std::string gen_stat = "boson";
    auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
    gen->add_option("--seed", gen_params.seed, "RNG seed");
    gen->add_option("--n", gen_params.blocks, "number of factor blocks")
        ->required();
    gen->add_option("--d", gen_params.d, "modes per block (default 1)");
    gen->add_option("--k", gen_params.k, "operator rank")->required();
    gen->add_option("--stat", gen_stat, "boson|fermion")
        ->check(CLI::IsMember({"boson", "fermion"}));
    gen->add_option("--n-max", gen_params.n_max, "per-factor particle bound");
    gen->add_flag("--single-particle", gen_params.single_particle,
                  "every factor is the one-particle state (permanent family)");
    gen->add_flag("--distinct-bra-ket", gen_params.distinct_bra_ket,
                  "draw an independent ket");
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");

    // verify
    std::string verify_suite;
    int verify_seeds = 100;
    bool verify_verbose = false;
    auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
    verify_cmd
        ->add_option("suite", verify_suite,
                     "moments|oracle-small|permanent|determinant|"
                     "normal-ordered|conjugation|all")
        ->required()
        ->check(CLI::IsMember({"moments", "oracle-small", "permanent",
                               "determinant", "normal-ordered", "conjugation",
                               "all"}));
    verify_cmd->add_option("--seeds", verify_seeds, "seed count (default 100)");
    verify_cmd->add_flag("--verbose", verify_verbose, "print every case");

    // bench
    std::string bench_stat = "boson";
    int bench_k = 1;
    std::vector<int> bench_ns;
    std::uint64_t bench_seed = 7;
    std::string bench_out;
    auto* bench = app.add_subcommand(
        "bench", "Scaling sweep: op_count vs N on the single-particle family");
    bench->add_option("--stat", bench_stat, "boson|fermion")
        ->check(CLI::IsMember({"boson", "fermion"}));
    bench->add_option("--k", bench_k, "operator rank")->required();
    bench->add_option("--n", bench_ns, "N values (comma separated)")
        ->required()
        ->delimiter(',');
    bench->add_option("--seed", bench_seed, "RNG seed (default 7)");
    bench->add_option("--out", bench_out, "CSV path (appends; stdout otherwise)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) return cmd_compute(compute_file, fast_path);
        if (*oracle) return cmd_oracle(oracle_file);
        if (*gen) {
            gen_params.statistics =
                gen_stat == "fermion" ? Statistics::Fermion : Statistics::Boson;
            return cmd_gen(gen_params, gen_out);
        }
        if (*verify_cmd)
            return cmd_verify(verify_suite, verify_seeds, verify_verbose);
        if (*bench)
            return cmd_bench(bench_stat, bench_k, bench_ns, bench_seed, bench_out);
    } catch (const ResourceGuardError& e) {
        std::fprintf(stderr, "resource guard: %s\n", e.what());
        return kExitResourceGuard;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInputError;
    } catch (const CapOverflowError& e) {
        std::fprintf(stderr, "internal error (degree caps): %s\n", e.what());
        return kExitInputError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInputError;
    }
    return kExitOk;
}
