// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_BRANCH_AND_BOUND_HPP
#define ENPACK_BRANCH_AND_BOUND_HPP

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "enpack/brute_force.hpp"
#include "enpack/component_order.hpp"
#include "enpack/instance.hpp"
#include "enpack/search_bound.hpp"
#include "enpack/solve_report.hpp"

namespace enpack {

struct BnbOptions {
    bool symmetry_breaking = true;
    std::int64_t node_limit = kDefaultNodeLimit;
};

namespace detail {

class BnbSearch {
public:
    BnbSearch(const Instance& inst, const BnbOptions& options)
        : inst_(inst),
          options_(options),
          order_(decreasing_size_order(inst)),
          cover_orders_(make_cover_orders(inst)) {
        const std::size_t machine_count = inst.num_machines();
        open_.assign(machine_count, false);
        residual_mem_.resize(machine_count);
        residual_cpu_.resize(machine_count);
        assignment_.assign(inst.num_components(), 0);
        for (std::size_t j = 0; j < machine_count; ++j) {
            residual_mem_[j] = inst.machines[j].mem_cap;
            residual_cpu_[j] = inst.machines[j].cpu_cap;
        }
        const Demand total = total_demand(inst);
        remaining_mem_ = total.mem;
        remaining_cpu_ = total.cpu;

        // sym_pred[j] = closest smaller-id machine with identical capacities
        // and weight, or npos. A closed machine may only be opened when its
        // predecessor (and by induction the whole group prefix) is open.
        sym_pred_.assign(machine_count, kNoPred);
        for (std::size_t j = 0; j < machine_count; ++j) {
            for (std::size_t k = j; k-- > 0;) {
                if (inst.machines[k].mem_cap == inst.machines[j].mem_cap &&
                    inst.machines[k].cpu_cap == inst.machines[j].cpu_cap &&
                    inst.machines[k].energy_weight == inst.machines[j].energy_weight) {
                    sym_pred_[j] = k;
                    break;
                }
            }
        }
    }

    SolveReport run() {
        const auto start = std::chrono::steady_clock::now();
        SolveReport report;

        const ValidationResult validation = validate_instance(inst_);
        if (!validation.structurally_ok()) {
            throw std::invalid_argument("solve_branch_and_bound: invalid instance: " +
                                        validation.issues.front().detail);
        }
        if (validation.has(ValidationIssueCode::ComponentFitsNowhere)) {
            report.status = SolveStatus::Infeasible;
        } else {
            expand(0);
            report.nodes_explored = nodes_;
            if (best_weight_) {
                Allocation alloc;
                alloc.assignment = best_assignment_;
                report.allocation = normalize(alloc, inst_);
                report.objective = -*best_weight_;
                report.status = aborted_ ? SolveStatus::Feasible : SolveStatus::Optimal;
            } else {
                report.status = aborted_ ? SolveStatus::LimitExceeded : SolveStatus::Infeasible;
            }
        }
        report.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        return report;
    }

private:
    static constexpr std::size_t kNoPred = static_cast<std::size_t>(-1);

    void expand(std::size_t depth) {
        if (aborted_) return;
        nodes_ += 1;
        if (nodes_ > options_.node_limit) {
            aborted_ = true;
            return;
        }
        if (depth == order_.size()) {
            // Every placement respected the residuals, so this is feasible.
            if (!best_weight_ || open_weight_ < *best_weight_) {
                best_weight_ = open_weight_;
                best_assignment_ = assignment_;
            }
            return;
        }
        if (!can_improve()) return;

        const std::size_t component = order_[depth];
        const std::int64_t mem_req = inst_.components[component].mem_req;
        const std::int64_t cpu_req = inst_.components[component].cpu_req;
        for (std::size_t j = 0; j < inst_.num_machines(); ++j) {
            if (residual_mem_[j] < mem_req || residual_cpu_[j] < cpu_req) continue;
            const bool opens = !open_[j];
            if (opens && options_.symmetry_breaking && sym_pred_[j] != kNoPred &&
                !open_[sym_pred_[j]]) {
                continue;
            }

            assignment_[component] = j;
            open_[j] = true;
            if (opens) open_weight_ += inst_.machines[j].energy_weight;
            residual_mem_[j] -= mem_req;
            residual_cpu_[j] -= cpu_req;
            remaining_mem_ -= mem_req;
            remaining_cpu_ -= cpu_req;

            expand(depth + 1);

            remaining_mem_ += mem_req;
            remaining_cpu_ += cpu_req;
            residual_mem_[j] += mem_req;
            residual_cpu_[j] += cpu_req;
            if (opens) {
                open_weight_ -= inst_.machines[j].energy_weight;
                open_[j] = false;
            }
            if (aborted_) return;
        }
    }

    /// False when the covering bound proves that no completion of the
    /// current node can beat the incumbent strictly.
    bool can_improve() {
        std::int64_t open_residual_mem = 0;
        std::int64_t open_residual_cpu = 0;
        for (std::size_t j = 0; j < inst_.num_machines(); ++j) {
            if (open_[j]) {
                open_residual_mem += residual_mem_[j];
                open_residual_cpu += residual_cpu_[j];
            }
        }
        const auto bound = extra_weight_bound(inst_, cover_orders_, open_, open_residual_mem,
                                              open_residual_cpu, remaining_mem_, remaining_cpu_);
        if (!bound) return false;  // remaining demand cannot be covered at all
        if (!best_weight_) return true;
        // The completion weight is an integer, so comparing the floored
        // bound against the integer incumbent is exact.
        const std::int64_t floor_extra = static_cast<std::int64_t>(bound->num / bound->den);
        return open_weight_ + floor_extra < *best_weight_;
    }

    const Instance& inst_;
    BnbOptions options_;
    std::vector<std::size_t> order_;
    CoverOrders cover_orders_;

    std::vector<bool> open_;
    std::vector<std::int64_t> residual_mem_;
    std::vector<std::int64_t> residual_cpu_;
    std::vector<std::size_t> assignment_;
    std::vector<std::size_t> sym_pred_;
    std::int64_t open_weight_ = 0;
    std::int64_t remaining_mem_ = 0;
    std::int64_t remaining_cpu_ = 0;

    std::optional<std::int64_t> best_weight_;
    std::vector<std::size_t> best_assignment_;
    std::int64_t nodes_ = 0;
    bool aborted_ = false;
};

}  // namespace detail

/// Exact solver: depth-first search over component placements in decreasing
/// size order, pruned by the fractional covering bound. Returns the same
/// objective as solve_brute_force on every instance where both complete.
inline SolveReport solve_branch_and_bound(const Instance& inst, const BnbOptions& options = {}) {
    detail::BnbSearch search(inst, options);
    return search.run();
}

}  // namespace enpack

#endif  // ENPACK_BRANCH_AND_BOUND_HPP
