// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_INSTANCE_HPP
#define ENPACK_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace enpack {

/// A workload to be placed. Demands are exact non-negative integers
/// (MB of memory, Mcycles/s of CPU).
struct Component {
    std::int64_t id = 0;
    std::int64_t mem_req = 0;
    std::int64_t cpu_req = 0;

    friend bool operator==(const Component&, const Component&) = default;
};

/// A machine that can host components. `energy_weight` is the cost of
/// keeping the machine powered on; machines with a higher weight are
/// preferred off when the placement allows it.
struct Machine {
    std::int64_t id = 0;
    std::int64_t mem_cap = 0;
    std::int64_t cpu_cap = 0;
    std::int64_t energy_weight = 1;

    friend bool operator==(const Machine&, const Machine&) = default;
};

/// The full placement problem: I components, J machines. Ids must equal
/// array positions (validate_instance checks this).
struct Instance {
    std::vector<Component> components;
    std::vector<Machine> machines;

    std::size_t num_components() const { return components.size(); }
    std::size_t num_machines() const { return machines.size(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// A placement: assignment[i] is the machine hosting component i, open[j]
/// tells whether machine j is powered on. A well-formed allocation keeps
/// every hosting machine powered on.
struct Allocation {
    std::vector<std::size_t> assignment;
    std::vector<bool> open;

    friend bool operator==(const Allocation&, const Allocation&) = default;
};

struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Validation

enum class ValidationIssueCode {
    NegativeValue,
    IdGap,
    ComponentFitsNowhere,
};

struct ValidationIssue {
    ValidationIssueCode code;
    std::string detail;

    friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationResult {
    std::vector<ValidationIssue> issues;

    bool ok() const { return issues.empty(); }

    /// True when the only problems (if any) are components that fit on no
    /// machine. Such instances are well-formed but certainly infeasible;
    /// model building still accepts them.
    bool structurally_ok() const {
        for (const auto& issue : issues) {
            if (issue.code != ValidationIssueCode::ComponentFitsNowhere) return false;
        }
        return true;
    }

    bool has(ValidationIssueCode code) const {
        for (const auto& issue : issues) {
            if (issue.code == code) return true;
        }
        return false;
    }
};

/// Checks type invariants (non-negative data, gap-free ids) and flags every
/// component that no machine can host even in isolation.
inline ValidationResult validate_instance(const Instance& inst) {
    ValidationResult result;
    auto flag = [&result](ValidationIssueCode code, std::string detail) {
        result.issues.push_back({code, std::move(detail)});
    };

    for (std::size_t i = 0; i < inst.components.size(); ++i) {
        const Component& c = inst.components[i];
        if (c.id != static_cast<std::int64_t>(i)) {
            flag(ValidationIssueCode::IdGap,
                 "component at position " + std::to_string(i) + " has id " + std::to_string(c.id));
        }
        if (c.mem_req < 0) {
            flag(ValidationIssueCode::NegativeValue,
                 "component " + std::to_string(i) + " mem_req " + std::to_string(c.mem_req));
        }
        if (c.cpu_req < 0) {
            flag(ValidationIssueCode::NegativeValue,
                 "component " + std::to_string(i) + " cpu_req " + std::to_string(c.cpu_req));
        }
    }
    for (std::size_t j = 0; j < inst.machines.size(); ++j) {
        const Machine& m = inst.machines[j];
        if (m.id != static_cast<std::int64_t>(j)) {
            flag(ValidationIssueCode::IdGap,
                 "machine at position " + std::to_string(j) + " has id " + std::to_string(m.id));
        }
        if (m.mem_cap < 0) {
            flag(ValidationIssueCode::NegativeValue,
                 "machine " + std::to_string(j) + " mem_cap " + std::to_string(m.mem_cap));
        }
        if (m.cpu_cap < 0) {
            flag(ValidationIssueCode::NegativeValue,
                 "machine " + std::to_string(j) + " cpu_cap " + std::to_string(m.cpu_cap));
        }
        if (m.energy_weight < 1) {
            flag(ValidationIssueCode::NegativeValue,
                 "machine " + std::to_string(j) + " energy_weight " + std::to_string(m.energy_weight));
        }
    }

    // A component that exceeds every machine's capacity can never be placed.
    for (std::size_t i = 0; i < inst.components.size(); ++i) {
        const Component& c = inst.components[i];
        bool fits_somewhere = false;
        for (const Machine& m : inst.machines) {
            if (m.mem_cap >= c.mem_req && m.cpu_cap >= c.cpu_req) {
                fits_somewhere = true;
                break;
            }
        }
        if (!fits_somewhere) {
            flag(ValidationIssueCode::ComponentFitsNowhere,
                 "component " + std::to_string(i) + " fits on no machine");
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Objective and feasibility

namespace detail {

inline void require_matching_dimensions(const Instance& inst, const Allocation& alloc,
                                        const char* what) {
    if (alloc.assignment.size() != inst.num_components() ||
        alloc.open.size() != inst.num_machines()) {
        throw DimensionMismatchError(std::string(what) + ": allocation dimensions (" +
                                     std::to_string(alloc.assignment.size()) + ", " +
                                     std::to_string(alloc.open.size()) +
                                     ") do not match instance (" +
                                     std::to_string(inst.num_components()) + ", " +
                                     std::to_string(inst.num_machines()) + ")");
    }
}

inline void require_assignment_in_range(const Instance& inst, const Allocation& alloc,
                                        const char* what) {
    for (std::size_t i = 0; i < alloc.assignment.size(); ++i) {
        if (alloc.assignment[i] >= inst.num_machines()) {
            throw std::out_of_range(std::string(what) + ": component " + std::to_string(i) +
                                    " assigned to machine " +
                                    std::to_string(alloc.assignment[i]) + " of " +
                                    std::to_string(inst.num_machines()));
        }
    }
}

}  // namespace detail

/// Energy objective of an allocation: the negated sum of the energy weights
/// of all powered-on machines. Larger (closer to zero) is better.
inline std::int64_t objective_value(const Instance& inst, const Allocation& alloc) {
    detail::require_matching_dimensions(inst, alloc, "objective_value");
    std::int64_t total = 0;
    for (std::size_t j = 0; j < inst.num_machines(); ++j) {
        if (alloc.open[j]) total += inst.machines[j].energy_weight;
    }
    return -total;
}

enum class ViolationKind {
    MemCapacity,
    CpuCapacity,
    ClosedMachineUsed,
};

/// One broken condition on one machine. For capacity kinds `slack` is
/// capacity minus load (negative when violated); for ClosedMachineUsed it is
/// the negated number of components sitting on the powered-off machine.
struct Violation {
    ViolationKind kind;
    std::size_t machine;
    std::int64_t slack;

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<Violation> violations;
};

/// Recomputes every machine's load and reports capacity overruns and
/// components hosted on powered-off machines. Violations are data, not
/// errors; only out-of-range assignments throw.
inline FeasibilityReport check_feasibility(const Instance& inst, const Allocation& alloc) {
    detail::require_matching_dimensions(inst, alloc, "check_feasibility");
    detail::require_assignment_in_range(inst, alloc, "check_feasibility");

    const std::size_t machine_count = inst.num_machines();
    std::vector<std::int64_t> mem_load(machine_count, 0);
    std::vector<std::int64_t> cpu_load(machine_count, 0);
    std::vector<std::int64_t> hosted(machine_count, 0);
    for (std::size_t i = 0; i < alloc.assignment.size(); ++i) {
        const std::size_t j = alloc.assignment[i];
        mem_load[j] += inst.components[i].mem_req;
        cpu_load[j] += inst.components[i].cpu_req;
        hosted[j] += 1;
    }

    FeasibilityReport report;
    for (std::size_t j = 0; j < machine_count; ++j) {
        const std::int64_t mem_slack = inst.machines[j].mem_cap - mem_load[j];
        const std::int64_t cpu_slack = inst.machines[j].cpu_cap - cpu_load[j];
        if (mem_slack < 0) {
            report.violations.push_back({ViolationKind::MemCapacity, j, mem_slack});
        }
        if (cpu_slack < 0) {
            report.violations.push_back({ViolationKind::CpuCapacity, j, cpu_slack});
        }
        if (hosted[j] > 0 && !alloc.open[j]) {
            report.violations.push_back({ViolationKind::ClosedMachineUsed, j, -hosted[j]});
        }
    }
    report.feasible = report.violations.empty();
    return report;
}

/// Canonical form of an allocation: a machine is open exactly when it hosts
/// at least one component. Idempotent; never changes the assignment.
inline Allocation normalize(const Allocation& alloc, const Instance& inst) {
    detail::require_assignment_in_range(inst, alloc, "normalize");
    Allocation out;
    out.assignment = alloc.assignment;
    out.open.assign(inst.num_machines(), false);
    for (std::size_t machine : alloc.assignment) out.open[machine] = true;
    return out;
}

struct Demand {
    std::int64_t mem = 0;
    std::int64_t cpu = 0;

    friend bool operator==(const Demand&, const Demand&) = default;
};

inline Demand total_demand(const Instance& inst) {
    Demand d;
    for (const Component& c : inst.components) {
        d.mem += c.mem_req;
        d.cpu += c.cpu_req;
    }
    return d;
}

}  // namespace enpack

#endif  // ENPACK_INSTANCE_HPP
