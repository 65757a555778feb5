// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_JSON_IO_HPP
#define ENPACK_JSON_IO_HPP

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "enpack/generator.hpp"
#include "enpack/instance.hpp"

namespace enpack {

struct JsonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::int64_t json_int(const nlohmann::ordered_json& node, const char* key,
                             std::optional<std::int64_t> fallback = std::nullopt) {
    if (!node.contains(key)) {
        if (fallback) return *fallback;
        throw JsonError(std::string("missing key \"") + key + "\"");
    }
    const auto& value = node.at(key);
    if (!value.is_number_integer()) {
        throw JsonError(std::string("key \"") + key + "\" is not an integer");
    }
    return value.get<std::int64_t>();
}

}  // namespace detail

/// Parses the instance document {"components": [{"mem", "cpu"}...],
/// "machines": [{"mem", "cpu", "weight"?}...]}. Ids are the array
/// positions; unknown keys (such as "meta") are ignored.
inline Instance instance_from_json(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw JsonError(std::string("instance parse error: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("components") || !doc.contains("machines")) {
        throw JsonError("instance document must contain \"components\" and \"machines\"");
    }
    Instance inst;
    std::int64_t next_id = 0;
    for (const auto& node : doc.at("components")) {
        Component c;
        c.id = next_id++;
        c.mem_req = detail::json_int(node, "mem");
        c.cpu_req = detail::json_int(node, "cpu");
        inst.components.push_back(c);
    }
    next_id = 0;
    for (const auto& node : doc.at("machines")) {
        Machine m;
        m.id = next_id++;
        m.mem_cap = detail::json_int(node, "mem");
        m.cpu_cap = detail::json_int(node, "cpu");
        m.energy_weight = detail::json_int(node, "weight", 1);
        inst.machines.push_back(m);
    }
    return inst;
}

struct InstanceMeta {
    std::uint64_t seed = 0;
    int attempts = 1;
};

/// Serializes an instance deterministically (two-space indent, fixed key
/// order). The optional meta block records how the instance was generated.
inline std::string instance_to_json(const Instance& inst,
                                    const std::optional<InstanceMeta>& meta = std::nullopt) {
    nlohmann::ordered_json doc;
    doc["components"] = nlohmann::ordered_json::array();
    for (const Component& c : inst.components) {
        doc["components"].push_back({{"mem", c.mem_req}, {"cpu", c.cpu_req}});
    }
    doc["machines"] = nlohmann::ordered_json::array();
    for (const Machine& m : inst.machines) {
        doc["machines"].push_back(
            {{"mem", m.mem_cap}, {"cpu", m.cpu_cap}, {"weight", m.energy_weight}});
    }
    if (meta) {
        doc["meta"] = {{"seed", meta->seed}, {"attempts", meta->attempts}};
    }
    return doc.dump(2) + "\n";
}

/// Parses {"assignment": [int...], "open": [bool...], "objective"?: int}.
inline Allocation allocation_from_json(const std::string& text,
                                       std::optional<std::int64_t>* objective_out = nullptr) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw JsonError(std::string("allocation parse error: ") + err.what());
    }
    if (!doc.is_object() || !doc.contains("assignment") || !doc.contains("open")) {
        throw JsonError("allocation document must contain \"assignment\" and \"open\"");
    }
    Allocation alloc;
    for (const auto& node : doc.at("assignment")) {
        if (!node.is_number_integer()) throw JsonError("assignment entries must be integers");
        const std::int64_t machine = node.get<std::int64_t>();
        if (machine < 0) throw JsonError("assignment entries must be non-negative");
        alloc.assignment.push_back(static_cast<std::size_t>(machine));
    }
    for (const auto& node : doc.at("open")) {
        if (!node.is_boolean()) throw JsonError("open entries must be booleans");
        alloc.open.push_back(node.get<bool>());
    }
    if (objective_out) {
        *objective_out = std::nullopt;
        if (doc.contains("objective")) {
            if (!doc.at("objective").is_number_integer()) {
                throw JsonError("objective must be an integer");
            }
            *objective_out = doc.at("objective").get<std::int64_t>();
        }
    }
    return alloc;
}

inline std::string allocation_to_json(const Allocation& alloc, std::int64_t objective) {
    nlohmann::ordered_json doc;
    doc["assignment"] = nlohmann::ordered_json::array();
    for (std::size_t machine : alloc.assignment) doc["assignment"].push_back(machine);
    doc["open"] = nlohmann::ordered_json::array();
    for (bool flag : alloc.open) doc["open"].push_back(flag);
    doc["objective"] = objective;
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// File helpers

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw JsonError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw JsonError("cannot write " + path);
    out << text;
}

inline Instance load_instance(const std::string& path) {
    return instance_from_json(read_text_file(path));
}

}  // namespace enpack

#endif  // ENPACK_JSON_IO_HPP
