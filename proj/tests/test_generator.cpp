// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include "enpack/generator.hpp"
#include "enpack/json_io.hpp"

using namespace enpack;

TEST_CASE("splitmix64 produces the published stream") {
    // First outputs of the reference implementation for state 0 and 42.
    SplitMix64 zero(0);
    CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
    CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(zero.next() == 0x06C45D188009454FULL);

    SplitMix64 seeded(42);
    CHECK(seeded.next() == 0xBDD732262FEB6E95ULL);
}

TEST_CASE("bounded draws stay in range") {
    SplitMix64 rng(3);
    for (int round = 0; round < 1000; ++round) {
        CHECK(rng.bounded(1) == 0);
        CHECK(rng.bounded(7) < 7);
        const std::int64_t v = rng.uniform(-3, 4);
        CHECK(v >= -3);
        CHECK(v <= 4);
    }
}

TEST_CASE("identical params give byte-identical instances") {
    GeneratorParams params;
    params.seed = 42;
    params.components = 10;
    params.machines = 5;
    const Instance a = generate_instance(params);
    const Instance b = generate_instance(params);
    CHECK(a == b);
    CHECK(instance_to_json(a) == instance_to_json(b));

    params.seed = 43;
    CHECK_FALSE(generate_instance(params) == a);
}

TEST_CASE("dimensions are folded into the stream") {
    GeneratorParams params;
    params.seed = 42;
    params.components = 4;
    params.machines = 3;
    const Instance a = generate_instance(params);
    params.components = 5;
    const Instance b = generate_instance(params);
    // The first four components differ because (seed, I, J) seeds the stream.
    CHECK_FALSE(std::equal(a.components.begin(), a.components.end(), b.components.begin()));
}

TEST_CASE("degenerate intervals pin every field") {
    GeneratorParams params;
    params.seed = 9;
    params.components = 6;
    params.machines = 2;
    params.mem_req = {3, 3};
    params.cpu_req = {3, 3};
    params.mem_cap = {9, 9};
    params.cpu_cap = {9, 9};
    params.weight = {2, 2};
    const Instance inst = generate_instance(params);
    for (const Component& c : inst.components) {
        CHECK(c.mem_req == 3);
        CHECK(c.cpu_req == 3);
    }
    for (const Machine& m : inst.machines) {
        CHECK(m.mem_cap == 9);
        CHECK(m.cpu_cap == 9);
        CHECK(m.energy_weight == 2);
    }
}

TEST_CASE("demand ranges below capacity ranges validate cleanly") {
    SplitMix64 rng(31);
    for (int round = 0; round < 50; ++round) {
        GeneratorParams params;
        params.seed = rng.next();
        params.components = 10;
        params.machines = 5;
        // Defaults keep every demand at or below every capacity.
        CHECK(validate_instance(generate_instance(params)).ok());
    }
}

TEST_CASE("invalid intervals are rejected") {
    GeneratorParams params;
    params.components = 1;
    params.machines = 1;
    params.mem_req = {5, 2};
    CHECK_THROWS_AS(generate_instance(params), InvalidRangeError);
    params.mem_req = {-1, 2};
    CHECK_THROWS_AS(generate_instance(params), InvalidRangeError);
    params.mem_req = {1, 2};
    params.weight = {0, 1};
    CHECK_THROWS_AS(generate_instance(params), InvalidRangeError);
}

TEST_CASE("validated generation retries with incremented seeds") {
    GeneratorParams params;
    params.components = 2;
    params.machines = 1;
    // Demands can exceed the tiny capacity, so some seeds fail validation.
    params.mem_req = {1, 6};
    params.cpu_req = {1, 6};
    params.mem_cap = {3, 3};
    params.cpu_cap = {3, 3};

    bool saw_retry = false;
    for (std::uint64_t seed = 0; seed < 40 && !saw_retry; ++seed) {
        params.seed = seed;
        const auto generated = generate_validated_instance(params);
        REQUIRE(generated.has_value());
        CHECK(validate_instance(generated->instance).ok());
        CHECK(generated->final_seed == seed + static_cast<std::uint64_t>(generated->attempts - 1));
        if (generated->attempts > 1) saw_retry = true;
    }
    CHECK(saw_retry);

    // Impossible configuration: give up after the attempt budget.
    params.mem_req = {5, 6};
    params.mem_cap = {3, 3};
    params.seed = 0;
    CHECK_FALSE(generate_validated_instance(params).has_value());
}

TEST_CASE("instance json round trips") {
    GeneratorParams params;
    params.seed = 77;
    params.components = 6;
    params.machines = 3;
    params.weight = {1, 4};
    const Instance inst = generate_instance(params);
    CHECK(instance_from_json(instance_to_json(inst)) == inst);

    // Meta block is carried for provenance but ignored by the reader.
    const std::string with_meta = instance_to_json(inst, InstanceMeta{77, 2});
    CHECK(instance_from_json(with_meta) == inst);
    CHECK(with_meta.find("\"seed\": 77") != std::string::npos);
}

TEST_CASE("weight defaults to one when the key is absent") {
    const Instance inst = instance_from_json(
        R"({"components": [{"mem": 3, "cpu": 1}], "machines": [{"mem": 4, "cpu": 8}]})");
    REQUIRE(inst.num_machines() == 1);
    CHECK(inst.machines[0].energy_weight == 1);
}

TEST_CASE("malformed documents raise JsonError") {
    CHECK_THROWS_AS(instance_from_json("not json"), JsonError);
    CHECK_THROWS_AS(instance_from_json("{\"components\": []}"), JsonError);
    CHECK_THROWS_AS(
        instance_from_json(R"({"components": [{"mem": 1}], "machines": []})"), JsonError);
    CHECK_THROWS_AS(allocation_from_json("{}"), JsonError);
    CHECK_THROWS_AS(
        allocation_from_json(R"({"assignment": [-1], "open": [true]})"), JsonError);
}
