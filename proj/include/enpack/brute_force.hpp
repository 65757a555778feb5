// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_BRUTE_FORCE_HPP
#define ENPACK_BRUTE_FORCE_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "enpack/instance.hpp"
#include "enpack/solve_report.hpp"

namespace enpack {

inline constexpr std::int64_t kDefaultNodeLimit = 10'000'000;

namespace detail {

/// J^I, clamped to limit+1 as soon as it exceeds the limit.
inline std::int64_t assignment_space_size(std::size_t components, std::size_t machines,
                                          std::int64_t limit) {
    std::int64_t size = 1;
    for (std::size_t i = 0; i < components; ++i) {
        if (machines == 0) return 0;
        if (size > limit / static_cast<std::int64_t>(machines)) return limit + 1;
        size *= static_cast<std::int64_t>(machines);
        if (size > limit) return limit + 1;
    }
    return size;
}

}  // namespace detail

/// Exhaustive optimality oracle: walks all J^I assignment maps in
/// lexicographic order, keeps the best feasible one, and breaks objective
/// ties toward the lexicographically smallest assignment. Per-machine loads
/// are maintained incrementally across odometer steps, so the walk costs
/// O(1) amortized per map.
inline SolveReport solve_brute_force(const Instance& inst,
                                     std::int64_t node_limit = kDefaultNodeLimit) {
    const auto start = std::chrono::steady_clock::now();
    SolveReport report;
    auto finish = [&start, &report]() {
        report.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return report;
    };

    const std::size_t component_count = inst.num_components();
    const std::size_t machine_count = inst.num_machines();

    const std::int64_t space = detail::assignment_space_size(component_count, machine_count,
                                                             node_limit);
    if (space > node_limit) {
        report.status = SolveStatus::LimitExceeded;
        return finish();
    }
    if (component_count == 0) {
        report.status = SolveStatus::Optimal;
        report.allocation = Allocation{{}, std::vector<bool>(machine_count, false)};
        report.objective = 0;
        report.nodes_explored = 1;
        return finish();
    }
    if (machine_count == 0) {
        report.status = SolveStatus::Infeasible;
        return finish();
    }

    std::vector<std::size_t> assignment(component_count, 0);
    std::vector<std::int64_t> mem_load(machine_count, 0);
    std::vector<std::int64_t> cpu_load(machine_count, 0);
    std::vector<std::int64_t> hosted(machine_count, 0);
    std::int64_t overloaded = 0;    // machines with some capacity exceeded
    std::int64_t open_weight = 0;   // summed weight of machines hosting something

    auto machine_overloaded = [&](std::size_t j) {
        return mem_load[j] > inst.machines[j].mem_cap || cpu_load[j] > inst.machines[j].cpu_cap;
    };
    auto place = [&](std::size_t i, std::size_t j) {
        const bool was_overloaded = machine_overloaded(j);
        if (hosted[j] == 0) open_weight += inst.machines[j].energy_weight;
        hosted[j] += 1;
        mem_load[j] += inst.components[i].mem_req;
        cpu_load[j] += inst.components[i].cpu_req;
        if (!was_overloaded && machine_overloaded(j)) overloaded += 1;
    };
    auto remove = [&](std::size_t i, std::size_t j) {
        const bool was_overloaded = machine_overloaded(j);
        hosted[j] -= 1;
        mem_load[j] -= inst.components[i].mem_req;
        cpu_load[j] -= inst.components[i].cpu_req;
        if (hosted[j] == 0) open_weight -= inst.machines[j].energy_weight;
        if (was_overloaded && !machine_overloaded(j)) overloaded -= 1;
    };

    for (std::size_t i = 0; i < component_count; ++i) place(i, 0);

    std::optional<std::int64_t> best_objective;
    std::vector<std::size_t> best_assignment;
    while (true) {
        report.nodes_explored += 1;
        if (overloaded == 0) {
            const std::int64_t objective = -open_weight;
            if (!best_objective || objective > *best_objective) {
                best_objective = objective;
                best_assignment = assignment;
            }
        }
        // Advance the odometer: last component cycles fastest, which makes
        // the walk lexicographic over assignment arrays.
        std::size_t pos = component_count;
        while (pos > 0) {
            const std::size_t i = pos - 1;
            remove(i, assignment[i]);
            if (assignment[i] + 1 < machine_count) {
                assignment[i] += 1;
                place(i, assignment[i]);
                break;
            }
            assignment[i] = 0;
            place(i, 0);
            --pos;
        }
        if (pos == 0) break;
    }

    if (!best_objective) {
        report.status = SolveStatus::Infeasible;
        return finish();
    }
    Allocation alloc;
    alloc.assignment = best_assignment;
    report.allocation = normalize(alloc, inst);
    report.objective = best_objective;
    report.status = SolveStatus::Optimal;
    return finish();
}

}  // namespace enpack

#endif  // ENPACK_BRUTE_FORCE_HPP
