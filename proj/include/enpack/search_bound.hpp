// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_SEARCH_BOUND_HPP
#define ENPACK_SEARCH_BOUND_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "enpack/instance.hpp"

namespace enpack {

/// Snapshot of a partial placement: the first `partial_assignment.size()`
/// components are placed, a machine is open exactly when it hosts one of
/// them, and `remaining_*` track the demand still to be placed.
struct SearchState {
    std::vector<std::size_t> partial_assignment;
    std::vector<bool> open;
    std::vector<std::int64_t> residual_mem;  // per machine, meaningful where open
    std::vector<std::int64_t> residual_cpu;
    std::int64_t open_weight = 0;
    std::int64_t remaining_mem = 0;
    std::int64_t remaining_cpu = 0;

    std::size_t next_component() const { return partial_assignment.size(); }
};

/// Builds the state for a prefix placement of components 0..prefix.size()-1.
inline SearchState make_search_state(const Instance& inst,
                                     const std::vector<std::size_t>& prefix) {
    if (prefix.size() > inst.num_components()) {
        throw DimensionMismatchError("make_search_state: prefix longer than instance");
    }
    SearchState state;
    state.partial_assignment = prefix;
    state.open.assign(inst.num_machines(), false);
    state.residual_mem.resize(inst.num_machines());
    state.residual_cpu.resize(inst.num_machines());
    for (std::size_t j = 0; j < inst.num_machines(); ++j) {
        state.residual_mem[j] = inst.machines[j].mem_cap;
        state.residual_cpu[j] = inst.machines[j].cpu_cap;
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        const std::size_t j = prefix[i];
        if (j >= inst.num_machines()) {
            throw std::out_of_range("make_search_state: machine id out of range");
        }
        if (!state.open[j]) {
            state.open[j] = true;
            state.open_weight += inst.machines[j].energy_weight;
        }
        state.residual_mem[j] -= inst.components[i].mem_req;
        state.residual_cpu[j] -= inst.components[i].cpu_req;
    }
    const Demand total = total_demand(inst);
    state.remaining_mem = total.mem;
    state.remaining_cpu = total.cpu;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        state.remaining_mem -= inst.components[i].mem_req;
        state.remaining_cpu -= inst.components[i].cpu_req;
    }
    return state;
}

namespace detail {

/// Machines pre-sorted for the covering bound: for each resource, closed
/// machines are consumed in decreasing capacity-per-weight order, which is
/// the cheapest way to cover demand when machines may be charged
/// fractionally.
struct CoverOrders {
    std::vector<std::size_t> by_mem;
    std::vector<std::size_t> by_cpu;
};

inline CoverOrders make_cover_orders(const Instance& inst) {
    CoverOrders orders;
    orders.by_mem.resize(inst.num_machines());
    orders.by_cpu.resize(inst.num_machines());
    std::iota(orders.by_mem.begin(), orders.by_mem.end(), 0);
    std::iota(orders.by_cpu.begin(), orders.by_cpu.end(), 0);
    auto sort_by = [&inst](std::vector<std::size_t>& order, auto capacity) {
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            // capacity_a/weight_a > capacity_b/weight_b, ties by id
            const __int128 lhs = static_cast<__int128>(capacity(inst.machines[a])) *
                                 inst.machines[b].energy_weight;
            const __int128 rhs = static_cast<__int128>(capacity(inst.machines[b])) *
                                 inst.machines[a].energy_weight;
            if (lhs != rhs) return lhs > rhs;
            return a < b;
        });
    };
    sort_by(orders.by_mem, [](const Machine& m) { return m.mem_cap; });
    sort_by(orders.by_cpu, [](const Machine& m) { return m.cpu_cap; });
    return orders;
}

/// Exact fraction num/den with den > 0, wide enough for weight*capacity
/// products of 64-bit inputs.
struct Frac {
    __int128 num = 0;
    std::int64_t den = 1;
};

inline bool frac_less(const Frac& a, const Frac& b) {
    return a.num * b.den < b.num * a.den;
}

/// Least total weight of closed machines (fractionally charged) whose
/// capacity covers `deficit`, or nullopt when even all of them are short.
/// Requires deficit > 0.
template <typename CapacityFn>
inline std::optional<Frac> fractional_cover(const Instance& inst,
                                            const std::vector<bool>& open,
                                            const std::vector<std::size_t>& order,
                                            CapacityFn capacity, std::int64_t deficit) {
    std::int64_t covered = 0;
    std::int64_t full_weight = 0;
    for (std::size_t j : order) {
        if (open[j]) continue;
        const std::int64_t cap = capacity(inst.machines[j]);
        if (cap == 0) continue;
        if (covered + cap >= deficit) {
            Frac bound;
            bound.num = static_cast<__int128>(full_weight) * cap +
                        static_cast<__int128>(deficit - covered) *
                            inst.machines[j].energy_weight;
            bound.den = cap;
            return bound;
        }
        covered += cap;
        full_weight += inst.machines[j].energy_weight;
    }
    return std::nullopt;
}

/// Core of the admissible bound; shared by the public wrapper and the
/// branch-and-bound's incremental state. Returns nullopt when the remaining
/// demand exceeds all capacity that could still be brought online (no
/// feasible completion exists).
inline std::optional<Frac> extra_weight_bound(const Instance& inst, const CoverOrders& orders,
                                              const std::vector<bool>& open,
                                              std::int64_t open_residual_mem,
                                              std::int64_t open_residual_cpu,
                                              std::int64_t remaining_mem,
                                              std::int64_t remaining_cpu) {
    const std::int64_t mem_deficit = std::max<std::int64_t>(0, remaining_mem - open_residual_mem);
    const std::int64_t cpu_deficit = std::max<std::int64_t>(0, remaining_cpu - open_residual_cpu);

    Frac best{0, 1};
    if (mem_deficit > 0) {
        auto mem_bound = fractional_cover(
            inst, open, orders.by_mem, [](const Machine& m) { return m.mem_cap; }, mem_deficit);
        if (!mem_bound) return std::nullopt;
        best = *mem_bound;
    }
    if (cpu_deficit > 0) {
        auto cpu_bound = fractional_cover(
            inst, open, orders.by_cpu, [](const Machine& m) { return m.cpu_cap; }, cpu_deficit);
        if (!cpu_bound) return std::nullopt;
        if (frac_less(best, *cpu_bound)) best = *cpu_bound;
    }
    return best;
}

}  // namespace detail

/// Admissible lower bound on the additional open-machine weight that any
/// feasible completion of `state` must incur, rounded down to an integer.
/// nullopt is the +infinity marker: the remaining demand cannot be covered
/// at all and the state has no feasible completion.
inline std::optional<std::int64_t> lower_bound_extra(const SearchState& state,
                                                     const Instance& inst) {
    if (state.open.size() != inst.num_machines()) {
        throw DimensionMismatchError("lower_bound_extra: state does not match instance");
    }
    std::int64_t open_residual_mem = 0;
    std::int64_t open_residual_cpu = 0;
    for (std::size_t j = 0; j < inst.num_machines(); ++j) {
        if (state.open[j]) {
            open_residual_mem += state.residual_mem[j];
            open_residual_cpu += state.residual_cpu[j];
        }
    }
    const detail::CoverOrders orders = detail::make_cover_orders(inst);
    const auto bound =
        detail::extra_weight_bound(inst, orders, state.open, open_residual_mem,
                                   open_residual_cpu, state.remaining_mem, state.remaining_cpu);
    if (!bound) return std::nullopt;
    return static_cast<std::int64_t>(bound->num / bound->den);
}

}  // namespace enpack

#endif  // ENPACK_SEARCH_BOUND_HPP
