// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_GREEDY_HPP
#define ENPACK_GREEDY_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "enpack/component_order.hpp"
#include "enpack/instance.hpp"
#include "enpack/solve_report.hpp"

namespace enpack {

namespace detail {

enum class FitRule { FirstFit, BestFit };

/// Shared skeleton of the decreasing greedy heuristics. Components are
/// taken in decreasing size order; open machines are scanned in ascending
/// (energy_weight, id) order. When no open machine fits, the cheapest
/// closed machine that fits is powered on.
inline SolveReport solve_greedy(const Instance& inst, FitRule rule) {
    const auto start = std::chrono::steady_clock::now();
    SolveReport report;

    const std::size_t machine_count = inst.num_machines();
    std::vector<std::size_t> machine_order(machine_count);
    std::iota(machine_order.begin(), machine_order.end(), 0);
    std::sort(machine_order.begin(), machine_order.end(), [&inst](std::size_t a, std::size_t b) {
        if (inst.machines[a].energy_weight != inst.machines[b].energy_weight) {
            return inst.machines[a].energy_weight < inst.machines[b].energy_weight;
        }
        return a < b;
    });

    std::vector<std::int64_t> residual_mem(machine_count);
    std::vector<std::int64_t> residual_cpu(machine_count);
    for (std::size_t j = 0; j < machine_count; ++j) {
        residual_mem[j] = inst.machines[j].mem_cap;
        residual_cpu[j] = inst.machines[j].cpu_cap;
    }
    std::vector<bool> open(machine_count, false);

    Allocation alloc;
    alloc.assignment.resize(inst.num_components());
    alloc.open.assign(machine_count, false);

    bool feasible = true;
    for (std::size_t component : decreasing_size_order(inst)) {
        const std::int64_t mem_req = inst.components[component].mem_req;
        const std::int64_t cpu_req = inst.components[component].cpu_req;
        auto fits = [&](std::size_t j) {
            return residual_mem[j] >= mem_req && residual_cpu[j] >= cpu_req;
        };

        std::size_t chosen = machine_count;
        if (rule == FitRule::FirstFit) {
            for (std::size_t j : machine_order) {
                if (open[j] && fits(j)) {
                    chosen = j;
                    break;
                }
            }
        } else {
            for (std::size_t j : machine_order) {
                if (!open[j] || !fits(j)) continue;
                if (chosen == machine_count) {
                    chosen = j;
                    continue;
                }
                const std::int64_t left_mem = residual_mem[j] - mem_req;
                const std::int64_t best_mem = residual_mem[chosen] - mem_req;
                if (left_mem != best_mem) {
                    if (left_mem < best_mem) chosen = j;
                    continue;
                }
                const std::int64_t left_cpu = residual_cpu[j] - cpu_req;
                const std::int64_t best_cpu = residual_cpu[chosen] - cpu_req;
                if (left_cpu != best_cpu) {
                    if (left_cpu < best_cpu) chosen = j;
                    continue;
                }
                if (j < chosen) chosen = j;
            }
        }
        if (chosen == machine_count) {
            for (std::size_t j : machine_order) {
                if (!open[j] && fits(j)) {
                    chosen = j;
                    break;
                }
            }
        }
        if (chosen == machine_count) {
            feasible = false;
            break;
        }
        open[chosen] = true;
        alloc.open[chosen] = true;
        alloc.assignment[component] = chosen;
        residual_mem[chosen] -= mem_req;
        residual_cpu[chosen] -= cpu_req;
    }

    if (feasible) {
        report.status = SolveStatus::Feasible;
        report.allocation = alloc;
        report.objective = objective_value(inst, alloc);
    } else {
        report.status = SolveStatus::Infeasible;
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace detail

/// First-fit decreasing: each component lands on the first open machine (in
/// ascending weight, id order) with room for it.
inline SolveReport solve_first_fit_decreasing(const Instance& inst) {
    return detail::solve_greedy(inst, detail::FitRule::FirstFit);
}

/// Best-fit decreasing: among open machines with room, picks the one left
/// with the least residual memory (ties: least residual cpu, then lowest id).
inline SolveReport solve_best_fit_decreasing(const Instance& inst) {
    return detail::solve_greedy(inst, detail::FitRule::BestFit);
}

}  // namespace enpack

#endif  // ENPACK_GREEDY_HPP
