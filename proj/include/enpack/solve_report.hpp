// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_SOLVE_REPORT_HPP
#define ENPACK_SOLVE_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "enpack/instance.hpp"

namespace enpack {

enum class SolveStatus {
    Optimal,        // proven best allocation
    Feasible,       // valid allocation without an optimality proof
    Infeasible,     // no allocation exists
    LimitExceeded,  // search aborted before finding any allocation
};

inline std::string to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::LimitExceeded: return "limit_exceeded";
    }
    return "unknown";
}

/// Common result shape for all solvers. When status is Optimal or Feasible
/// the allocation is present, feasible, and `objective` equals its exact
/// objective value.
struct SolveReport {
    SolveStatus status = SolveStatus::Infeasible;
    std::optional<Allocation> allocation;
    std::optional<std::int64_t> objective;
    std::int64_t nodes_explored = 0;
    double elapsed_ms = 0.0;
};

}  // namespace enpack

#endif  // ENPACK_SOLVE_REPORT_HPP
