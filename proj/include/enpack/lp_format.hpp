// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_LP_FORMAT_HPP
#define ENPACK_LP_FORMAT_HPP

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "enpack/standard_form.hpp"

namespace enpack {

namespace detail {

/// Renders a linear expression the way CPLEX LP files write them: magnitude-1
/// coefficients drop the numeral, terms are joined with signed operators.
/// An empty expression renders as "0".
inline std::string lp_expression(
    const std::vector<std::pair<std::size_t, std::int64_t>>& entries,
    const VariableIndex& index) {
    if (entries.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [column, coefficient] : entries) {
        const std::int64_t magnitude = coefficient < 0 ? -coefficient : coefficient;
        if (first) {
            if (coefficient < 0) out += "- ";
            first = false;
        } else {
            out += coefficient < 0 ? " - " : " + ";
        }
        if (magnitude != 1) {
            out += std::to_string(magnitude);
            out += ' ';
        }
        out += index.variable_name(column);
    }
    return out;
}

}  // namespace detail

/// Serializes the model as CPLEX LP text. The emission is deterministic:
/// identical standard forms produce byte-identical files. Binaries are
/// declared in their own section, so the explicit upper-bound rows are
/// redundant for external solvers but keep the matrix complete.
inline std::string export_lp(const StandardForm& sf) {
    std::ostringstream out;
    out << "Maximize\n obj:";
    std::vector<std::pair<std::size_t, std::int64_t>> objective;
    for (std::size_t col = 0; col < sf.c.size(); ++col) {
        if (sf.c[col] != 0) objective.emplace_back(col, sf.c[col]);
    }
    if (!objective.empty()) {
        out << ' ' << detail::lp_expression(objective, sf.index);
    }
    out << "\nSubject To\n";
    for (const SparseRow& row : sf.rows) {
        out << ' ' << row.label << ": " << detail::lp_expression(row.entries, sf.index)
            << (row.sense == RowSense::LessEq ? " <= " : " = ") << row.rhs << '\n';
    }
    out << "Bounds\nBinaries\n";
    for (std::size_t col = 0; col < sf.num_columns(); ++col) {
        out << ' ' << sf.index.variable_name(col) << '\n';
    }
    out << "End\n";
    return out.str();
}

struct LpParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct LpName {
    bool is_d = false;
    std::size_t i = 0;
    std::size_t j = 0;
};

inline LpName parse_variable_name(const std::string& name) {
    LpName parsed;
    auto parse_index = [&name](std::string_view text) {
        if (text.empty()) throw LpParseError("bad variable name: " + name);
        std::size_t value = 0;
        for (char ch : text) {
            if (ch < '0' || ch > '9') throw LpParseError("bad variable name: " + name);
            value = value * 10 + static_cast<std::size_t>(ch - '0');
        }
        return value;
    };
    if (name.rfind("d_", 0) == 0) {
        const std::size_t sep = name.find('_', 2);
        if (sep == std::string::npos) throw LpParseError("bad variable name: " + name);
        parsed.is_d = true;
        parsed.i = parse_index(std::string_view(name).substr(2, sep - 2));
        parsed.j = parse_index(std::string_view(name).substr(sep + 1));
        return parsed;
    }
    if (name.rfind("o_", 0) == 0) {
        parsed.is_d = false;
        parsed.j = parse_index(std::string_view(name).substr(2));
        return parsed;
    }
    throw LpParseError("bad variable name: " + name);
}

inline bool all_digits(const std::string& token) {
    if (token.empty()) return false;
    for (char ch : token) {
        if (ch < '0' || ch > '9') return false;
    }
    return true;
}

/// Parses a term sequence like "3 d_0_0 - 4 o_0" into (name, coefficient)
/// pairs. Accepts the lone "0" produced for empty expressions.
inline std::vector<std::pair<std::string, std::int64_t>> parse_lp_terms(
    const std::string& text) {
    std::vector<std::string> tokens;
    {
        std::istringstream in(text);
        std::string token;
        while (in >> token) tokens.push_back(token);
    }
    std::vector<std::pair<std::string, std::int64_t>> terms;
    if (tokens.empty() || (tokens.size() == 1 && tokens[0] == "0")) return terms;

    std::int64_t sign = 1;
    std::int64_t magnitude = 1;
    bool have_magnitude = false;
    for (const std::string& token : tokens) {
        if (token == "+" || token == "-") {
            sign = token == "-" ? -1 : 1;
            continue;
        }
        if (all_digits(token)) {
            magnitude = std::stoll(token);
            have_magnitude = true;
            continue;
        }
        terms.emplace_back(token, sign * (have_magnitude ? magnitude : 1));
        sign = 1;
        magnitude = 1;
        have_magnitude = false;
    }
    if (have_magnitude) throw LpParseError("dangling coefficient in: " + text);
    return terms;
}

}  // namespace detail

/// Reads LP text written by export_lp back into a StandardForm. This is a
/// reader for our own canonical output, not a general LP parser; it exists
/// so round trips can be checked at the data level.
inline StandardForm parse_lp(const std::string& text) {
    enum class Section { Preamble, Objective, SubjectTo, Bounds, Binaries, End };
    Section section = Section::Preamble;

    std::vector<std::pair<std::string, std::int64_t>> objective_terms;
    struct PendingRow {
        std::string label;
        std::vector<std::pair<std::string, std::int64_t>> terms;
        RowSense sense;
        std::int64_t rhs;
    };
    std::vector<PendingRow> pending;
    std::vector<std::string> binaries;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line == "Maximize") { section = Section::Objective; continue; }
        if (line == "Subject To") { section = Section::SubjectTo; continue; }
        if (line == "Bounds") { section = Section::Bounds; continue; }
        if (line == "Binaries") { section = Section::Binaries; continue; }
        if (line == "End") { section = Section::End; continue; }
        if (line.empty()) continue;

        switch (section) {
            case Section::Objective: {
                const std::size_t colon = line.find(':');
                if (colon == std::string::npos) throw LpParseError("missing ':' in " + line);
                objective_terms = detail::parse_lp_terms(line.substr(colon + 1));
                break;
            }
            case Section::SubjectTo: {
                const std::size_t colon = line.find(':');
                if (colon == std::string::npos) throw LpParseError("missing ':' in " + line);
                PendingRow row;
                row.label = line.substr(1, colon - 1);
                std::string body = line.substr(colon + 1);
                std::size_t op = body.find("<=");
                std::size_t op_len = 2;
                row.sense = RowSense::LessEq;
                if (op == std::string::npos) {
                    op = body.find('=');
                    op_len = 1;
                    row.sense = RowSense::Eq;
                }
                if (op == std::string::npos) throw LpParseError("missing sense in " + line);
                row.terms = detail::parse_lp_terms(body.substr(0, op));
                row.rhs = std::stoll(body.substr(op + op_len));
                pending.push_back(std::move(row));
                break;
            }
            case Section::Binaries: {
                std::istringstream names(line);
                std::string name;
                while (names >> name) binaries.push_back(name);
                break;
            }
            default:
                break;
        }
    }

    // The variable layout is recovered from the declared binaries; assignment
    // row labels additionally pin the component count when J = 0 leaves no
    // variables at all.
    std::size_t component_count = 0;
    std::size_t machine_count = 0;
    for (const std::string& name : binaries) {
        const detail::LpName parsed = detail::parse_variable_name(name);
        if (parsed.is_d && parsed.i + 1 > component_count) component_count = parsed.i + 1;
        if (parsed.j + 1 > machine_count) machine_count = parsed.j + 1;
    }
    for (const PendingRow& row : pending) {
        if (row.label.rfind("assign_", 0) == 0) {
            const std::size_t i = std::stoull(row.label.substr(7));
            if (i + 1 > component_count) component_count = i + 1;
        }
    }

    StandardForm sf;
    sf.index = VariableIndex{component_count, machine_count};
    sf.c.assign(sf.index.num_columns(), 0);
    auto column_of = [&sf](const std::string& name) {
        const detail::LpName parsed = detail::parse_variable_name(name);
        return parsed.is_d ? sf.index.column_d(parsed.i, parsed.j)
                           : sf.index.column_o(parsed.j);
    };
    for (const auto& [name, coefficient] : objective_terms) {
        sf.c[column_of(name)] = coefficient;
    }
    sf.rows.reserve(pending.size());
    for (const PendingRow& row : pending) {
        SparseRow out;
        out.label = row.label;
        out.sense = row.sense;
        out.rhs = row.rhs;
        for (const auto& [name, coefficient] : row.terms) {
            out.push(column_of(name), coefficient);
        }
        sf.rows.push_back(std::move(out));
    }
    return sf;
}

}  // namespace enpack

#endif  // ENPACK_LP_FORMAT_HPP
