// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_BENCHMARK_HPP
#define ENPACK_BENCHMARK_HPP

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "enpack/branch_and_bound.hpp"
#include "enpack/brute_force.hpp"
#include "enpack/generator.hpp"
#include "enpack/greedy.hpp"
#include "enpack/instance.hpp"
#include "enpack/json_io.hpp"
#include "enpack/solve_report.hpp"

namespace enpack {

struct NamedInstance {
    std::string id;
    Instance instance;
};

/// One (instance, solver) outcome. `gap` is the exact solver's objective
/// minus this solver's objective; it is present only when the run includes
/// an exact solver that finished with a proven optimum.
struct BenchmarkRow {
    std::string instance_id;
    std::string solver;
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<std::int64_t> objective;
    std::optional<std::int64_t> gap;
    std::int64_t nodes = 0;
    double elapsed_ms = 0.0;
};

struct BenchmarkLimits {
    std::int64_t node_limit = kDefaultNodeLimit;
};

inline SolveReport run_solver(const std::string& name, const Instance& inst,
                              const BenchmarkLimits& limits) {
    if (name == "brute") return solve_brute_force(inst, limits.node_limit);
    if (name == "bnb") return solve_branch_and_bound(inst, {true, limits.node_limit});
    if (name == "ffd") return solve_first_fit_decreasing(inst);
    if (name == "bfd") return solve_best_fit_decreasing(inst);
    throw std::invalid_argument("unknown solver: " + name);
}

/// Runs every named solver on every instance, then fills in optimality gaps
/// relative to the exact solver ("bnb" when listed, else "brute"). Rows come
/// back sorted by (instance id, solver name).
inline std::vector<BenchmarkRow> run_benchmark(const std::vector<NamedInstance>& instances,
                                               const std::vector<std::string>& solvers,
                                               const BenchmarkLimits& limits = {}) {
    std::string exact_solver;
    for (const std::string& name : solvers) {
        if (name == "bnb") exact_solver = "bnb";
        if (name == "brute" && exact_solver.empty()) exact_solver = "brute";
    }

    std::vector<BenchmarkRow> rows;
    rows.reserve(instances.size() * solvers.size());
    for (const NamedInstance& named : instances) {
        std::optional<std::int64_t> exact_objective;
        std::vector<BenchmarkRow> instance_rows;
        for (const std::string& name : solvers) {
            const SolveReport report = run_solver(name, named.instance, limits);
            BenchmarkRow row;
            row.instance_id = named.id;
            row.solver = name;
            row.status = report.status;
            row.objective = report.objective;
            row.nodes = report.nodes_explored;
            row.elapsed_ms = report.elapsed_ms;
            if (name == exact_solver && report.status == SolveStatus::Optimal) {
                exact_objective = report.objective;
            }
            instance_rows.push_back(std::move(row));
        }
        for (BenchmarkRow& row : instance_rows) {
            if (exact_objective && row.objective) {
                row.gap = *exact_objective - *row.objective;
            }
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
        if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
        return a.solver < b.solver;
    });
    return rows;
}

inline std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
    std::ostringstream out;
    out << "instance,solver,status,objective,gap,nodes,elapsed_ms\n";
    for (const BenchmarkRow& row : rows) {
        out << row.instance_id << ',' << row.solver << ',' << to_string(row.status) << ',';
        if (row.objective) out << *row.objective;
        out << ',';
        if (row.gap) out << *row.gap;
        out << ',' << row.nodes << ',';
        char elapsed[32];
        std::snprintf(elapsed, sizeof(elapsed), "%.3f", row.elapsed_ms);
        out << elapsed << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Suite files

/// A benchmark suite is either a list of instance files
///   {"files": ["a.json", "b.json"]}
/// or a generator block expanded to `count` instances whose seeds step by one
///   {"count": 20, "seed": 1, "components": 8, "machines": 4,
///    "mem_req": [1, 8], "cpu_req": [1, 8],
///    "mem_cap": [10, 24], "cpu_cap": [10, 24], "weight": [1, 1]}
/// Interval keys are optional and default to the generator's defaults.
/// Generated instances that fail validation are redrawn with seed+1, like
/// the gen command.
inline std::vector<NamedInstance> load_suite(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw JsonError(std::string("suite parse error: ") + err.what());
    }
    if (!doc.is_object()) throw JsonError("suite document must be an object");

    std::vector<NamedInstance> instances;
    if (doc.contains("files")) {
        for (const auto& node : doc.at("files")) {
            const std::string path = node.get<std::string>();
            instances.push_back({path, load_instance(path)});
        }
        return instances;
    }

    auto interval = [&doc](const char* key, IntInterval fallback) {
        if (!doc.contains(key)) return fallback;
        const auto& node = doc.at(key);
        if (!node.is_array() || node.size() != 2) {
            throw JsonError(std::string("suite key \"") + key + "\" must be [lo, hi]");
        }
        return IntInterval{node[0].get<std::int64_t>(), node[1].get<std::int64_t>()};
    };

    GeneratorParams base;
    base.seed = detail::json_int(doc, "seed", 1);
    base.components = static_cast<std::size_t>(detail::json_int(doc, "components"));
    base.machines = static_cast<std::size_t>(detail::json_int(doc, "machines"));
    base.mem_req = interval("mem_req", base.mem_req);
    base.cpu_req = interval("cpu_req", base.cpu_req);
    base.mem_cap = interval("mem_cap", base.mem_cap);
    base.cpu_cap = interval("cpu_cap", base.cpu_cap);
    base.weight = interval("weight", base.weight);
    const std::int64_t count = detail::json_int(doc, "count", 1);

    for (std::int64_t k = 0; k < count; ++k) {
        GeneratorParams params = base;
        params.seed = base.seed + static_cast<std::uint64_t>(k);
        const auto generated = generate_validated_instance(params);
        if (!generated) {
            throw JsonError("suite instance " + std::to_string(k) +
                            ": no valid instance within 100 seeds");
        }
        char id[32];
        std::snprintf(id, sizeof(id), "inst-%03lld", static_cast<long long>(k));
        instances.push_back({id, std::move(generated->instance)});
    }
    return instances;
}

}  // namespace enpack

#endif  // ENPACK_BENCHMARK_HPP
