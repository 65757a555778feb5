// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>

#include "enpack/generator.hpp"
#include "enpack/standard_form.hpp"
#include "test_support.hpp"

using namespace enpack;
using testing::make_instance;

namespace {

Instance ten_by_five_instance() {
    std::vector<testing::ComponentSpec> components;
    for (int i = 0; i < 10; ++i) components.push_back({2 + i % 4, 1 + i % 3});
    std::vector<testing::MachineSpec> machines(5, {12, 10, 1});
    return make_instance(components, machines);
}

/// Counts expected nonzeros per row family straight from the instance data:
/// capacity rows store one coefficient per nonzero demand plus the capacity
/// term, bound rows one each, assignment rows one per machine.
std::size_t counted_nonzeros(const Instance& inst) {
    const std::size_t component_count = inst.num_components();
    const std::size_t machine_count = inst.num_machines();
    std::size_t nonzero_mem_req = 0;
    std::size_t nonzero_cpu_req = 0;
    for (const Component& c : inst.components) {
        if (c.mem_req != 0) ++nonzero_mem_req;
        if (c.cpu_req != 0) ++nonzero_cpu_req;
    }
    std::size_t count = 0;
    for (const Machine& m : inst.machines) {
        count += nonzero_mem_req + (m.mem_cap != 0 ? 1 : 0);
        count += nonzero_cpu_req + (m.cpu_cap != 0 ? 1 : 0);
    }
    count += component_count * machine_count + machine_count;  // bound rows
    count += component_count * machine_count;                  // assignment rows
    return count;
}

}  // namespace

TEST_CASE("dimensions reproduce the reference counts") {
    CHECK(dimensions(10, 5) == std::pair<std::size_t, std::size_t>{75, 55});
    CHECK(dimensions(1, 1) == std::pair<std::size_t, std::size_t>{5, 2});
    CHECK(dimensions(0, 3) == std::pair<std::size_t, std::size_t>{9, 3});
}

TEST_CASE("variable columns are d-block first, i-major") {
    const VariableIndex index{3, 2};
    CHECK(index.column_d(0, 0) == 0);
    CHECK(index.column_d(0, 1) == 1);
    CHECK(index.column_d(2, 1) == 5);
    CHECK(index.column_o(0) == 6);
    CHECK(index.column_o(1) == 7);
    CHECK(index.num_columns() == 8);
    CHECK(index.variable_name(5) == "d_2_1");
    CHECK(index.variable_name(7) == "o_1");
}

TEST_CASE("c vector of a default-weight 10x5 model has five -1 entries") {
    const StandardForm sf = build_standard_form(ten_by_five_instance());
    REQUIRE(sf.c.size() == 55);
    CHECK(std::count(sf.c.begin(), sf.c.end(), -1) == 5);
    CHECK(std::count(sf.c.begin(), sf.c.end(), 0) == 50);
    for (std::size_t j = 0; j < 5; ++j) CHECK(sf.c[sf.index.column_o(j)] == -1);
}

TEST_CASE("c vector carries per-machine energy weights") {
    const Instance inst = make_instance({{1, 1}}, {{4, 4, 2}, {4, 4, 7}});
    const StandardForm sf = build_standard_form(inst);
    CHECK(sf.c[sf.index.column_o(0)] == -2);
    CHECK(sf.c[sf.index.column_o(1)] == -7);
}

TEST_CASE("1x1 model is a direct transcription of the constraints") {
    const Instance inst = make_instance({{3, 1}}, {{4, 8}});
    const StandardForm sf = build_standard_form(inst);
    REQUIRE(sf.rows.size() == 5);
    REQUIRE(sf.c == std::vector<std::int64_t>{0, -1});

    const SparseRow& mem = sf.rows[0];
    CHECK(mem.label == "mem_0");
    CHECK(mem.sense == RowSense::LessEq);
    CHECK(mem.rhs == 0);
    CHECK(mem.entries == std::vector<std::pair<std::size_t, std::int64_t>>{{0, 3}, {1, -4}});

    const SparseRow& cpu = sf.rows[1];
    CHECK(cpu.label == "cpu_0");
    CHECK(cpu.entries == std::vector<std::pair<std::size_t, std::int64_t>>{{0, 1}, {1, -8}});

    CHECK(sf.rows[2].label == "ub_d_0_0");
    CHECK(sf.rows[2].entries == std::vector<std::pair<std::size_t, std::int64_t>>{{0, 1}});
    CHECK(sf.rows[2].rhs == 1);
    CHECK(sf.rows[3].label == "ub_o_0");
    CHECK(sf.rows[3].entries == std::vector<std::pair<std::size_t, std::int64_t>>{{1, 1}});

    const SparseRow& assign = sf.rows[4];
    CHECK(assign.label == "assign_0");
    CHECK(assign.sense == RowSense::Eq);
    CHECK(assign.rhs == 1);
    CHECK(assign.entries == std::vector<std::pair<std::size_t, std::int64_t>>{{0, 1}});
}

TEST_CASE("zero demands are not stored") {
    const Instance inst = make_instance({{0, 2}}, {{4, 8}});
    const StandardForm sf = build_standard_form(inst);
    // The memory row keeps only the capacity term.
    CHECK(sf.rows[0].entries ==
          std::vector<std::pair<std::size_t, std::int64_t>>{{1, -4}});
    CHECK(counted_nonzeros(inst) == nonzero_count(sf));
}

TEST_CASE("nonzero counts match the per-family counting rule") {
    const StandardForm reference = build_standard_form(ten_by_five_instance());
    CHECK(nonzero_count(reference) == 215);
    CHECK(counted_nonzeros(ten_by_five_instance()) == 215);

    const StandardForm tiny = build_standard_form(make_instance({{3, 1}}, {{4, 8}}));
    CHECK(nonzero_count(tiny) == 7);

    // A zero-demand component strictly reduces the count.
    Instance with_zero = ten_by_five_instance();
    with_zero.components[3].mem_req = 0;
    CHECK(nonzero_count(build_standard_form(with_zero)) < 215);
}

TEST_CASE("density of the 10x5 model stays below six percent") {
    const StandardForm sf = build_standard_form(ten_by_five_instance());
    const auto [rows, columns] = dimensions(10, 5);
    CHECK(rows * columns == 4125);
    CHECK(static_cast<double>(nonzero_count(sf)) / static_cast<double>(rows * columns) < 0.06);
}

TEST_CASE("row labels come out in family order") {
    const StandardForm sf = build_standard_form(ten_by_five_instance());
    const char* prefixes[] = {"mem_", "cpu_", "ub_d_", "ub_o_", "assign_"};
    std::size_t family = 0;
    std::size_t seen_in_family = 0;
    const std::size_t family_sizes[] = {5, 5, 50, 5, 10};
    for (const SparseRow& row : sf.rows) {
        if (seen_in_family == family_sizes[family]) {
            ++family;
            seen_in_family = 0;
        }
        REQUIRE(family < 5);
        CHECK(row.label.rfind(prefixes[family], 0) == 0);
        ++seen_in_family;
    }
    CHECK(family == 4);
}

TEST_CASE("encode_allocation lays out d then o") {
    SECTION("component on the second of two machines") {
        const VariableIndex index{1, 2};
        CHECK(encode_allocation({{1}, {false, true}}, index) ==
              std::vector<std::int64_t>{0, 1, 0, 1});
    }
    SECTION("no components") {
        const VariableIndex index{0, 1};
        CHECK(encode_allocation({{}, {false}}, index) == std::vector<std::int64_t>{0});
    }
    SECTION("two components sharing a machine") {
        const VariableIndex index{2, 1};
        CHECK(encode_allocation({{0, 0}, {true}}, index) == std::vector<std::int64_t>{1, 1, 1});
    }
    SECTION("mismatched lengths throw") {
        const VariableIndex index{1, 2};
        CHECK_THROWS_AS(encode_allocation({{1}, {false}}, index), DimensionMismatchError);
    }
}

TEST_CASE("decode_solution inverts encode and normalizes") {
    const Instance inst = make_instance({{1, 1}}, {{4, 4}, {4, 4}});
    const VariableIndex index{1, 2};

    const Allocation decoded = decode_solution({0, 1, 0, 1}, index, inst);
    CHECK(decoded.assignment == std::vector<std::size_t>{1});
    CHECK(decoded.open == std::vector<bool>{false, true});

    // o_1 set although machine 1 hosts nothing: normalized away.
    const Allocation cleaned = decode_solution({1, 0, 1, 1}, index, inst);
    CHECK(cleaned.open == std::vector<bool>{true, false});

    CHECK_THROWS_AS(decode_solution({1, 1, 1, 1}, index, inst), NotExactlyOneAssignmentError);
    CHECK_THROWS_AS(decode_solution({2, 0, 1, 0}, index, inst), NonBinaryEntryError);
    CHECK_THROWS_AS(decode_solution({1, 0, 1}, index, inst), DimensionMismatchError);
}

TEST_CASE("verify_solution pinpoints violated rows") {
    const Instance inst = make_instance({{3, 1}}, {{4, 8}});
    const StandardForm sf = build_standard_form(inst);

    SECTION("all zeros violates the assignment row") {
        const VerificationReport report = verify_solution(sf, {0, 0});
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].label == "assign_0");
        CHECK(report.violations[0].lhs == 0);
        CHECK(report.violations[0].rhs == 1);
        CHECK(report.objective == 0);
    }
    SECTION("placement on a powered-off machine violates the capacity rows") {
        const VerificationReport report = verify_solution(sf, {1, 0});
        REQUIRE(report.violations.size() == 2);
        CHECK(report.violations[0].label == "mem_0");
        CHECK(report.violations[0].lhs == 3);
        CHECK(report.violations[0].rhs == 0);
        CHECK(report.violations[1].label == "cpu_0");
        CHECK(report.violations[1].lhs == 1);
    }
    SECTION("negative and non-binary entries are reported") {
        const VerificationReport report = verify_solution(sf, {-1, 2});
        REQUIRE(report.violations.size() >= 2);
        CHECK(report.violations[0].label == "nonneg(d_0_0)");
        CHECK(report.violations[1].label == "binary(o_0)");
    }
}

TEST_CASE("pure-inequality view splits equality rows") {
    const StandardForm sf = build_standard_form(ten_by_five_instance());
    const std::vector<SparseRow> rows = to_pure_inequalities(sf);
    CHECK(rows.size() == 85);  // 75 rows with the 10 equalities doubled
    for (const SparseRow& row : rows) CHECK(row.sense == RowSense::LessEq);
}

TEST_CASE("standard form properties over seeded random instances") {
    SplitMix64 rng(7);
    for (int round = 0; round < 150; ++round) {
        GeneratorParams params;
        params.seed = rng.next();
        params.components = rng.bounded(7);
        params.machines = 1 + rng.bounded(4);
        params.mem_req = {0, 9};
        params.cpu_req = {0, 9};
        params.mem_cap = {0, 20};
        params.cpu_cap = {0, 20};
        params.weight = {1, 4};
        const Instance inst = generate_instance(params);
        const StandardForm sf = build_standard_form(inst);

        // Shape agrees with the dimension formulas.
        const auto [rows, columns] = dimensions(inst.num_components(), inst.num_machines());
        CHECK(sf.rows.size() == rows);
        CHECK(sf.c.size() == columns);
        CHECK(nonzero_count(sf) == counted_nonzeros(inst));

        for (const SparseRow& row : sf.rows) {
            for (std::size_t k = 1; k < row.entries.size(); ++k) {
                CHECK(row.entries[k - 1].first < row.entries[k].first);
            }
            for (const auto& [column, coefficient] : row.entries) {
                CHECK(coefficient != 0);
                CHECK(column < columns);
            }
        }

        const Allocation alloc = testing::random_allocation(inst, rng);
        const Allocation normalized = normalize(alloc, inst);

        // Round trip through the x vector lands on the normalized form.
        CHECK(decode_solution(encode_allocation(normalized, sf.index), sf.index, inst) ==
              normalized);
        CHECK(decode_solution(encode_allocation(alloc, sf.index), sf.index, inst) == normalized);

        // Model verification agrees with the domain-level feasibility check,
        // and the model objective matches the allocation objective.
        const auto x = encode_allocation(normalized, sf.index);
        const VerificationReport verification = verify_solution(sf, x);
        CHECK(verification.ok() == check_feasibility(inst, normalized).feasible);
        CHECK(verification.objective == objective_value(inst, normalized));

        // Equality view and inequality view accept exactly the same vectors.
        StandardForm split = sf;
        split.rows = to_pure_inequalities(sf);
        CHECK(verify_solution(split, x).ok() == verification.ok());
    }
}
