// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_COMPONENT_ORDER_HPP
#define ENPACK_COMPONENT_ORDER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <vector>

#include "enpack/instance.hpp"

namespace enpack {

namespace detail {

/// Size key used by the decreasing-size orders: the larger of the two
/// demands, each measured relative to the fleet's average capacity for that
/// resource. Comparisons are exact; a demand against a zero total capacity
/// counts as infinitely large (such components fit nowhere anyway).
struct SizeKey {
    bool infinite = false;
    __int128 scaled = 0;  // max(mem_req * cpu_cap_total, cpu_req * mem_cap_total)

    friend bool operator<(const SizeKey& a, const SizeKey& b) {
        if (a.infinite != b.infinite) return !a.infinite;
        return a.scaled < b.scaled;
    }
};

inline SizeKey size_key(const Component& c, std::int64_t mem_cap_total,
                        std::int64_t cpu_cap_total) {
    SizeKey key;
    if ((mem_cap_total == 0 && c.mem_req > 0) || (cpu_cap_total == 0 && c.cpu_req > 0)) {
        key.infinite = true;
        return key;
    }
    if (mem_cap_total > 0 && cpu_cap_total > 0) {
        // mem_req/mem_cap_total and cpu_req/cpu_cap_total over the common
        // denominator mem_cap_total*cpu_cap_total. The per-resource averages
        // divide both by the same machine count, which cancels.
        key.scaled = std::max(static_cast<__int128>(c.mem_req) * cpu_cap_total,
                              static_cast<__int128>(c.cpu_req) * mem_cap_total);
    } else if (mem_cap_total > 0) {
        key.scaled = c.mem_req;  // the cpu side contributes nothing fleet-wide
    } else if (cpu_cap_total > 0) {
        key.scaled = c.cpu_req;
    }
    return key;
}

}  // namespace detail

/// Component ids sorted by decreasing size key, ties by ascending id. Both
/// the greedy heuristics and the exact search assign big items first.
inline std::vector<std::size_t> decreasing_size_order(const Instance& inst) {
    std::int64_t mem_cap_total = 0;
    std::int64_t cpu_cap_total = 0;
    for (const Machine& m : inst.machines) {
        mem_cap_total += m.mem_cap;
        cpu_cap_total += m.cpu_cap;
    }
    std::vector<detail::SizeKey> keys;
    keys.reserve(inst.num_components());
    for (const Component& c : inst.components) {
        keys.push_back(detail::size_key(c, mem_cap_total, cpu_cap_total));
    }
    std::vector<std::size_t> order(inst.num_components());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&keys](std::size_t a, std::size_t b) {
        if (keys[b] < keys[a]) return true;
        if (keys[a] < keys[b]) return false;
        return a < b;
    });
    return order;
}

}  // namespace enpack

#endif  // ENPACK_COMPONENT_ORDER_HPP
