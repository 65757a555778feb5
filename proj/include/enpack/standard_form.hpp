// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_STANDARD_FORM_HPP
#define ENPACK_STANDARD_FORM_HPP

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "enpack/instance.hpp"

namespace enpack {

/// Column layout of the x vector. The placement variables d_ij come first in
/// i-major order, followed by the power variables o_j:
///
///   column(d_ij) = i*J + j        column(o_j) = I*J + j
struct VariableIndex {
    std::size_t component_count = 0;  // I
    std::size_t machine_count = 0;    // J

    std::size_t column_d(std::size_t i, std::size_t j) const {
        return i * machine_count + j;
    }
    std::size_t column_o(std::size_t j) const {
        return component_count * machine_count + j;
    }
    std::size_t num_columns() const {
        return component_count * machine_count + machine_count;
    }

    std::string variable_name(std::size_t column) const {
        const std::size_t d_block = component_count * machine_count;
        if (column < d_block) {
            return "d_" + std::to_string(column / machine_count) + "_" +
                   std::to_string(column % machine_count);
        }
        return "o_" + std::to_string(column - d_block);
    }

    friend bool operator==(const VariableIndex&, const VariableIndex&) = default;
};

/// Row count M and column count N of the constraint matrix for an instance
/// with `components` x `machines`: one memory and one CPU row per machine,
/// one upper-bound row per variable, one assignment row per component.
inline std::pair<std::size_t, std::size_t> dimensions(std::size_t components,
                                                      std::size_t machines) {
    const std::size_t columns = components * machines + machines;
    const std::size_t rows = 2 * machines + columns + components;
    return {rows, columns};
}

enum class RowSense { LessEq, Eq };

/// One constraint row. Only nonzero coefficients are stored, with strictly
/// increasing column indices.
struct SparseRow {
    std::vector<std::pair<std::size_t, std::int64_t>> entries;
    RowSense sense = RowSense::LessEq;
    std::int64_t rhs = 0;
    std::string label;

    void push(std::size_t column, std::int64_t coefficient) {
        if (coefficient == 0) return;
        entries.emplace_back(column, coefficient);
    }

    friend bool operator==(const SparseRow&, const SparseRow&) = default;
};

/// The numeric triple for "maximize c^T x subject to A x <= b, x >= 0" with
/// every variable binary. Rows are ordered mem_*, cpu_*, ub_d_*, ub_o_*,
/// assign_*, each family by ascending index.
struct StandardForm {
    std::vector<std::int64_t> c;
    std::vector<SparseRow> rows;
    VariableIndex index;

    std::size_t num_rows() const { return rows.size(); }
    std::size_t num_columns() const { return c.size(); }

    friend bool operator==(const StandardForm&, const StandardForm&) = default;
};

/// Transcribes an instance into standard form. Capacity rows are written in
/// homogeneous form (demand terms minus capacity times the power variable,
/// right-hand side zero) so that all variables sit on the left.
inline StandardForm build_standard_form(const Instance& inst) {
    const ValidationResult validation = validate_instance(inst);
    if (!validation.structurally_ok()) {
        throw std::invalid_argument("build_standard_form: instance fails structural validation: " +
                                    validation.issues.front().detail);
    }

    const std::size_t component_count = inst.num_components();
    const std::size_t machine_count = inst.num_machines();
    const VariableIndex index{component_count, machine_count};

    StandardForm sf;
    sf.index = index;
    sf.c.assign(index.num_columns(), 0);
    for (std::size_t j = 0; j < machine_count; ++j) {
        sf.c[index.column_o(j)] = -inst.machines[j].energy_weight;
    }
    sf.rows.reserve(dimensions(component_count, machine_count).first);

    for (std::size_t j = 0; j < machine_count; ++j) {
        SparseRow row;
        row.label = "mem_" + std::to_string(j);
        for (std::size_t i = 0; i < component_count; ++i) {
            row.push(index.column_d(i, j), inst.components[i].mem_req);
        }
        row.push(index.column_o(j), -inst.machines[j].mem_cap);
        sf.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < machine_count; ++j) {
        SparseRow row;
        row.label = "cpu_" + std::to_string(j);
        for (std::size_t i = 0; i < component_count; ++i) {
            row.push(index.column_d(i, j), inst.components[i].cpu_req);
        }
        row.push(index.column_o(j), -inst.machines[j].cpu_cap);
        sf.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < component_count; ++i) {
        for (std::size_t j = 0; j < machine_count; ++j) {
            SparseRow row;
            row.label = "ub_d_" + std::to_string(i) + "_" + std::to_string(j);
            row.push(index.column_d(i, j), 1);
            row.rhs = 1;
            sf.rows.push_back(std::move(row));
        }
    }
    for (std::size_t j = 0; j < machine_count; ++j) {
        SparseRow row;
        row.label = "ub_o_" + std::to_string(j);
        row.push(index.column_o(j), 1);
        row.rhs = 1;
        sf.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < component_count; ++i) {
        SparseRow row;
        row.label = "assign_" + std::to_string(i);
        row.sense = RowSense::Eq;
        for (std::size_t j = 0; j < machine_count; ++j) {
            row.push(index.column_d(i, j), 1);
        }
        row.rhs = 1;
        sf.rows.push_back(std::move(row));
    }
    return sf;
}

inline std::size_t nonzero_count(const StandardForm& sf) {
    std::size_t count = 0;
    for (const SparseRow& row : sf.rows) count += row.entries.size();
    return count;
}

// ---------------------------------------------------------------------------
// Solution encoding

struct NotExactlyOneAssignmentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonBinaryEntryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Writes an allocation as an x vector: d_ij = 1 where component i sits on
/// machine j, o_j mirroring the open flags.
inline std::vector<std::int64_t> encode_allocation(const Allocation& alloc,
                                                   const VariableIndex& index) {
    if (alloc.assignment.size() != index.component_count ||
        alloc.open.size() != index.machine_count) {
        throw DimensionMismatchError("encode_allocation: allocation does not match index");
    }
    std::vector<std::int64_t> x(index.num_columns(), 0);
    for (std::size_t i = 0; i < alloc.assignment.size(); ++i) {
        if (alloc.assignment[i] >= index.machine_count) {
            throw std::out_of_range("encode_allocation: machine id out of range");
        }
        x[index.column_d(i, alloc.assignment[i])] = 1;
    }
    for (std::size_t j = 0; j < index.machine_count; ++j) {
        if (alloc.open[j]) x[index.column_o(j)] = 1;
    }
    return x;
}

/// Reads an allocation back from an x vector and normalizes it, so machines
/// that are flagged on but host nothing come back closed. Each component's
/// d block must contain exactly one 1.
inline Allocation decode_solution(const std::vector<std::int64_t>& x,
                                  const VariableIndex& index, const Instance& inst) {
    if (x.size() != index.num_columns()) {
        throw DimensionMismatchError("decode_solution: x has length " +
                                     std::to_string(x.size()) + ", expected " +
                                     std::to_string(index.num_columns()));
    }
    for (std::int64_t value : x) {
        if (value != 0 && value != 1) {
            throw NonBinaryEntryError("decode_solution: entry " + std::to_string(value));
        }
    }
    Allocation alloc;
    alloc.assignment.resize(index.component_count);
    for (std::size_t i = 0; i < index.component_count; ++i) {
        std::size_t ones = 0;
        for (std::size_t j = 0; j < index.machine_count; ++j) {
            if (x[index.column_d(i, j)] == 1) {
                alloc.assignment[i] = j;
                ++ones;
            }
        }
        if (ones != 1) {
            throw NotExactlyOneAssignmentError("decode_solution: component " +
                                               std::to_string(i) + " has " +
                                               std::to_string(ones) + " placements");
        }
    }
    alloc.open.assign(index.machine_count, false);
    return normalize(alloc, inst);
}

// ---------------------------------------------------------------------------
// Verification

/// A constraint or variable-domain condition broken by a candidate x vector.
struct RowViolation {
    std::string label;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;

    friend bool operator==(const RowViolation&, const RowViolation&) = default;
};

struct VerificationReport {
    std::vector<RowViolation> violations;
    std::int64_t objective = 0;  // c.x, reported regardless of feasibility

    bool ok() const { return violations.empty(); }
};

/// Evaluates every row of the standard form against an arbitrary integer
/// vector, plus the x >= 0 and binarity conditions implied by the model.
inline VerificationReport verify_solution(const StandardForm& sf,
                                          const std::vector<std::int64_t>& x) {
    if (x.size() != sf.num_columns()) {
        throw DimensionMismatchError("verify_solution: x has length " +
                                     std::to_string(x.size()) + ", expected " +
                                     std::to_string(sf.num_columns()));
    }
    VerificationReport report;
    for (std::size_t col = 0; col < x.size(); ++col) {
        if (x[col] < 0) {
            report.violations.push_back({"nonneg(" + sf.index.variable_name(col) + ")",
                                         x[col], 0});
        } else if (x[col] > 1) {
            report.violations.push_back({"binary(" + sf.index.variable_name(col) + ")",
                                         x[col], 1});
        }
    }
    for (const SparseRow& row : sf.rows) {
        std::int64_t lhs = 0;
        for (const auto& [column, coefficient] : row.entries) {
            lhs += coefficient * x[column];
        }
        const bool satisfied = row.sense == RowSense::LessEq ? lhs <= row.rhs : lhs == row.rhs;
        if (!satisfied) {
            report.violations.push_back({row.label, lhs, row.rhs});
        }
    }
    for (std::size_t col = 0; col < x.size(); ++col) {
        report.objective += sf.c[col] * x[col];
    }
    return report;
}

// ---------------------------------------------------------------------------
// Derived views

/// Equality-free copy of the rows: each Eq row becomes a <= pair (original
/// coefficients with suffix _le, negated coefficients with suffix _ge).
inline std::vector<SparseRow> to_pure_inequalities(const StandardForm& sf) {
    std::vector<SparseRow> rows;
    rows.reserve(sf.rows.size());
    for (const SparseRow& row : sf.rows) {
        if (row.sense == RowSense::LessEq) {
            rows.push_back(row);
            continue;
        }
        SparseRow le = row;
        le.sense = RowSense::LessEq;
        le.label += "_le";
        rows.push_back(std::move(le));

        SparseRow ge;
        ge.label = row.label + "_ge";
        ge.sense = RowSense::LessEq;
        ge.rhs = -row.rhs;
        for (const auto& [column, coefficient] : row.entries) {
            ge.push(column, -coefficient);
        }
        rows.push_back(std::move(ge));
    }
    return rows;
}

/// Test-facing text dump: one row per line, `<label>: <col>:<coef> ... <sense> <rhs>`.
inline std::string dump_rows(const StandardForm& sf) {
    std::ostringstream out;
    for (const SparseRow& row : sf.rows) {
        out << row.label << ':';
        for (const auto& [column, coefficient] : row.entries) {
            out << ' ' << column << ':' << coefficient;
        }
        out << (row.sense == RowSense::LessEq ? " <= " : " = ") << row.rhs << '\n';
    }
    return out.str();
}

}  // namespace enpack

#endif  // ENPACK_STANDARD_FORM_HPP
