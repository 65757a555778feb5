// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: instance generation, solving, model export,
// solution verification, and benchmark campaigns.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "enpack/enpack.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitLimitExceeded = 3;

enpack::IntInterval parse_interval(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos) {
        throw CLI::ValidationError("interval must be written lo:hi, got \"" + text + "\"");
    }
    try {
        return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw CLI::ValidationError("interval must be written lo:hi, got \"" + text + "\"");
    }
}

int exit_code_for(enpack::SolveStatus status) {
    switch (status) {
        case enpack::SolveStatus::Optimal:
        case enpack::SolveStatus::Feasible:
            return kExitOk;
        case enpack::SolveStatus::Infeasible:
            return kExitInfeasible;
        case enpack::SolveStatus::LimitExceeded:
            return kExitLimitExceeded;
    }
    return kExitInvalidInput;
}

int run_gen(std::uint64_t seed, std::size_t components, std::size_t machines,
            const std::optional<std::string>& mem_req, const std::optional<std::string>& cpu_req,
            const std::optional<std::string>& mem_cap, const std::optional<std::string>& cpu_cap,
            const std::optional<std::string>& weight, const std::string& out_path) {
    enpack::GeneratorParams params;
    params.seed = seed;
    params.components = components;
    params.machines = machines;
    if (mem_req) params.mem_req = parse_interval(*mem_req);
    if (cpu_req) params.cpu_req = parse_interval(*cpu_req);
    if (mem_cap) params.mem_cap = parse_interval(*mem_cap);
    if (cpu_cap) params.cpu_cap = parse_interval(*cpu_cap);
    if (weight) params.weight = parse_interval(*weight);

    const auto generated = enpack::generate_validated_instance(params);
    if (!generated) {
        std::cerr << "gen: no valid instance within 100 seeds starting at " << seed << "\n";
        return kExitInfeasible;
    }
    enpack::InstanceMeta meta{generated->final_seed, generated->attempts};
    enpack::write_text_file(out_path, enpack::instance_to_json(generated->instance, meta));
    std::cout << "wrote " << out_path << " (seed " << meta.seed << ", attempts " << meta.attempts
              << ")\n";
    return kExitOk;
}

int run_solve(const std::string& instance_path, const std::string& solver, bool no_symmetry,
              std::int64_t node_limit, const std::optional<std::string>& out_path) {
    const enpack::Instance inst = enpack::load_instance(instance_path);
    const enpack::ValidationResult validation = enpack::validate_instance(inst);
    if (!validation.structurally_ok()) {
        std::cerr << "solve: invalid instance: " << validation.issues.front().detail << "\n";
        return kExitInvalidInput;
    }

    enpack::SolveReport report;
    if (solver == "bnb") {
        report = enpack::solve_branch_and_bound(inst, {!no_symmetry, node_limit});
    } else {
        report = enpack::run_solver(solver, inst, {node_limit});
    }

    std::cout << "status: " << enpack::to_string(report.status) << "\n";
    if (report.objective) std::cout << "objective: " << *report.objective << "\n";
    std::cout << "nodes: " << report.nodes_explored << "\n";
    char elapsed[32];
    std::snprintf(elapsed, sizeof(elapsed), "%.3f", report.elapsed_ms);
    std::cout << "elapsed_ms: " << elapsed << "\n";

    if (out_path && report.allocation) {
        enpack::write_text_file(*out_path,
                                enpack::allocation_to_json(*report.allocation, *report.objective));
        std::cout << "wrote " << *out_path << "\n";
    }
    return exit_code_for(report.status);
}

int run_export(const std::string& instance_path, const std::string& format,
               const std::string& out_path) {
    if (format != "lp") {
        std::cerr << "export: unsupported format \"" << format << "\"\n";
        return kExitInvalidInput;
    }
    const enpack::Instance inst = enpack::load_instance(instance_path);
    const enpack::ValidationResult validation = enpack::validate_instance(inst);
    if (!validation.structurally_ok()) {
        std::cerr << "export: invalid instance: " << validation.issues.front().detail << "\n";
        return kExitInvalidInput;
    }
    enpack::write_text_file(out_path, enpack::export_lp(enpack::build_standard_form(inst)));
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int run_verify(const std::string& instance_path, const std::string& alloc_path) {
    const enpack::Instance inst = enpack::load_instance(instance_path);
    std::optional<std::int64_t> recorded_objective;
    const enpack::Allocation alloc =
        enpack::allocation_from_json(enpack::read_text_file(alloc_path), &recorded_objective);

    if (alloc.assignment.size() != inst.num_components() ||
        alloc.open.size() != inst.num_machines()) {
        std::cerr << "verify: allocation dimensions do not match instance\n";
        return kExitInvalidInput;
    }
    for (std::size_t machine : alloc.assignment) {
        if (machine >= inst.num_machines()) {
            std::cerr << "verify: assignment references machine " << machine << "\n";
            return kExitInvalidInput;
        }
    }

    bool clean = true;
    const enpack::FeasibilityReport feasibility = enpack::check_feasibility(inst, alloc);
    for (const enpack::Violation& v : feasibility.violations) {
        const char* kind = v.kind == enpack::ViolationKind::MemCapacity   ? "mem capacity"
                           : v.kind == enpack::ViolationKind::CpuCapacity ? "cpu capacity"
                                                                          : "closed machine used";
        std::cout << "violation: " << kind << " on machine " << v.machine << " (slack " << v.slack
                  << ")\n";
        clean = false;
    }

    const enpack::StandardForm sf = enpack::build_standard_form(inst);
    const auto x = enpack::encode_allocation(alloc, sf.index);
    const enpack::VerificationReport verification = enpack::verify_solution(sf, x);
    for (const enpack::RowViolation& v : verification.violations) {
        std::cout << "violated row " << v.label << ": lhs " << v.lhs << " vs rhs " << v.rhs << "\n";
        clean = false;
    }

    const std::int64_t objective = enpack::objective_value(inst, alloc);
    if (verification.objective != objective) {
        std::cout << "model objective " << verification.objective
                  << " disagrees with allocation objective " << objective << "\n";
        clean = false;
    }
    if (recorded_objective && *recorded_objective != objective) {
        std::cout << "recorded objective " << *recorded_objective << " but allocation evaluates to "
                  << objective << "\n";
        clean = false;
    }

    if (clean) {
        std::cout << "ok: feasible, objective " << objective << "\n";
        return kExitOk;
    }
    return kExitInfeasible;
}

int run_bench(const std::string& suite_path, const std::string& solvers_csv,
              std::int64_t node_limit, const std::string& out_path) {
    std::vector<std::string> solvers;
    std::string name;
    for (char ch : solvers_csv + ",") {
        if (ch == ',') {
            if (!name.empty()) solvers.push_back(name);
            name.clear();
        } else {
            name += ch;
        }
    }
    if (solvers.empty()) {
        std::cerr << "bench: no solvers given\n";
        return kExitInvalidInput;
    }

    const auto instances = enpack::load_suite(enpack::read_text_file(suite_path));
    const auto rows = enpack::run_benchmark(instances, solvers, {node_limit});
    enpack::write_text_file(out_path, enpack::benchmark_csv(rows));
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows)\n";
    return kExitOk;
}

int run_main(int argc, char** argv) {
    CLI::App app{"energy-aware component placement via 0-1 integer programming"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    std::uint64_t seed = 1;
    std::size_t components = 0;
    std::size_t machines = 0;
    std::optional<std::string> mem_req, cpu_req, mem_cap, cpu_cap, weight;
    std::string gen_out;
    gen->add_option("--seed", seed, "generator seed")->required();
    gen->add_option("--components", components, "number of components")->required();
    gen->add_option("--machines", machines, "number of machines")->required();
    gen->add_option("--mem-req", mem_req, "memory demand interval lo:hi");
    gen->add_option("--cpu-req", cpu_req, "cpu demand interval lo:hi");
    gen->add_option("--mem-cap", mem_cap, "memory capacity interval lo:hi");
    gen->add_option("--cpu-cap", cpu_cap, "cpu capacity interval lo:hi");
    gen->add_option("--weight", weight, "energy weight interval lo:hi");
    gen->add_option("-o,--out", gen_out, "output instance file")->required();

    // solve
    auto* solve = app.add_subcommand("solve", "solve an instance");
    std::string solve_instance;
    std::string solver = "bnb";
    bool no_symmetry = false;
    std::int64_t node_limit = enpack::kDefaultNodeLimit;
    std::optional<std::string> solve_out;
    solve->add_option("-i,--instance", solve_instance, "instance file")->required();
    solve->add_option("--solver", solver, "brute|bnb|ffd|bfd")
        ->required()
        ->check(CLI::IsMember({"brute", "bnb", "ffd", "bfd"}));
    solve->add_flag("--no-symmetry", no_symmetry, "disable symmetry breaking in bnb");
    solve->add_option("--node-limit", node_limit, "search node limit");
    solve->add_option("--out", solve_out, "write the allocation to this file");

    // export
    auto* exp = app.add_subcommand("export", "export the model in a solver format");
    std::string export_instance, export_format = "lp", export_out;
    exp->add_option("-i,--instance", export_instance, "instance file")->required();
    exp->add_option("--format", export_format, "output format (lp)")->required();
    exp->add_option("-o,--out", export_out, "output model file")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "re-check an allocation against an instance");
    std::string verify_instance, verify_alloc;
    verify->add_option("-i,--instance", verify_instance, "instance file")->required();
    verify->add_option("--alloc", verify_alloc, "allocation file")->required();

    // dims
    auto* dims = app.add_subcommand("dims", "print the standard-form dimensions");
    std::size_t dims_components = 0;
    std::size_t dims_machines = 0;
    dims->add_option("--components", dims_components, "number of components")->required();
    dims->add_option("--machines", dims_machines, "number of machines")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run a benchmark suite and write a CSV");
    std::string bench_suite, bench_solvers = "bnb,ffd,bfd", bench_out;
    std::int64_t bench_node_limit = enpack::kDefaultNodeLimit;
    bench->add_option("--suite", bench_suite, "suite file")->required();
    bench->add_option("--solvers", bench_solvers, "comma-separated solver list");
    bench->add_option("--node-limit", bench_node_limit, "per-solve node limit");
    bench->add_option("-o,--out", bench_out, "output CSV file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    try {
        if (gen->parsed()) {
            return run_gen(seed, components, machines, mem_req, cpu_req, mem_cap, cpu_cap, weight,
                           gen_out);
        }
        if (solve->parsed()) {
            return run_solve(solve_instance, solver, no_symmetry, node_limit, solve_out);
        }
        if (exp->parsed()) return run_export(export_instance, export_format, export_out);
        if (verify->parsed()) return run_verify(verify_instance, verify_alloc);
        if (dims->parsed()) {
            const auto [rows, columns] = enpack::dimensions(dims_components, dims_machines);
            std::cout << "M=" << rows << " N=" << columns << "\n";
            return kExitOk;
        }
        if (bench->parsed()) {
            return run_bench(bench_suite, bench_solvers, bench_node_limit, bench_out);
        }
    } catch (const CLI::ValidationError& err) {
        std::cerr << err.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_main(argc, argv);
    } catch (...) {
        std::cerr << "error: unexpected failure\n";
        return kExitInvalidInput;
    }
}
