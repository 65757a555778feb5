// SPDX-License-Identifier: Apache-2.0

#ifndef ENPACK_GENERATOR_HPP
#define ENPACK_GENERATOR_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "enpack/instance.hpp"

namespace enpack {

/// splitmix64: the fixed generator behind every seeded draw in this project.
/// State advances by the 64-bit golden-ratio increment and each output runs
/// through the two-round xor-shift-multiply finalizer. The exact algorithm
/// is pinned here so generated instances are reproducible bit-for-bit on any
/// platform; nothing is delegated to library-defined engines.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, range) by rejection below the largest multiple
    /// of range, so the distribution is exact and platform-independent.
    std::uint64_t bounded(std::uint64_t range) {
        if (range == 0) throw std::invalid_argument("SplitMix64::bounded: empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t draw;
        do {
            draw = next();
        } while (draw >= limit);
        return draw % range;
    }

    /// Uniform draw from the closed interval [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        bounded(static_cast<std::uint64_t>(hi - lo) + 1));
    }

private:
    std::uint64_t state_;
};

struct IntInterval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    friend bool operator==(const IntInterval&, const IntInterval&) = default;
};

struct InvalidRangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct GeneratorParams {
    std::uint64_t seed = 0;
    std::size_t components = 0;
    std::size_t machines = 0;
    IntInterval mem_req{1, 8};
    IntInterval cpu_req{1, 8};
    IntInterval mem_cap{10, 24};
    IntInterval cpu_cap{10, 24};
    IntInterval weight{1, 1};

    friend bool operator==(const GeneratorParams&, const GeneratorParams&) = default;
};

namespace detail {

inline void require_valid_interval(const IntInterval& interval, std::int64_t floor,
                                   const char* name) {
    if (interval.lo < floor || interval.lo > interval.hi) {
        throw InvalidRangeError(std::string("generate_instance: bad interval for ") + name +
                                ": [" + std::to_string(interval.lo) + ", " +
                                std::to_string(interval.hi) + "]");
    }
}

}  // namespace detail

/// Draws an instance with every field uniform over its interval. The stream
/// is seeded by (seed, I, J) and consumed in a fixed order: per component
/// mem then cpu, then per machine mem, cpu, weight. Identical params give
/// identical instances.
inline Instance generate_instance(const GeneratorParams& params) {
    detail::require_valid_interval(params.mem_req, 0, "mem_req");
    detail::require_valid_interval(params.cpu_req, 0, "cpu_req");
    detail::require_valid_interval(params.mem_cap, 0, "mem_cap");
    detail::require_valid_interval(params.cpu_cap, 0, "cpu_cap");
    detail::require_valid_interval(params.weight, 1, "weight");

    SplitMix64 rng(params.seed);
    // Fold the dimensions into the stream so (seed, I, J) triples are
    // distinct streams even for equal seeds.
    rng = SplitMix64(rng.next() ^ (0x632BE59BD9B4E019ULL * (params.components + 1)) ^
                     (0x9E6C63D0876A9F4BULL * (params.machines + 1)));

    Instance inst;
    inst.components.reserve(params.components);
    for (std::size_t i = 0; i < params.components; ++i) {
        Component c;
        c.id = static_cast<std::int64_t>(i);
        c.mem_req = rng.uniform(params.mem_req.lo, params.mem_req.hi);
        c.cpu_req = rng.uniform(params.cpu_req.lo, params.cpu_req.hi);
        inst.components.push_back(c);
    }
    inst.machines.reserve(params.machines);
    for (std::size_t j = 0; j < params.machines; ++j) {
        Machine m;
        m.id = static_cast<std::int64_t>(j);
        m.mem_cap = rng.uniform(params.mem_cap.lo, params.mem_cap.hi);
        m.cpu_cap = rng.uniform(params.cpu_cap.lo, params.cpu_cap.hi);
        m.energy_weight = rng.uniform(params.weight.lo, params.weight.hi);
        inst.machines.push_back(m);
    }
    return inst;
}

struct GeneratedInstance {
    Instance instance;
    std::uint64_t final_seed = 0;  // seed that produced the instance
    int attempts = 1;
};

/// Like generate_instance, but when some component fits on no machine the
/// draw is retried with seed+1, up to `max_attempts` times. The seed that
/// finally produced the instance is reported so runs remain reproducible.
inline std::optional<GeneratedInstance> generate_validated_instance(GeneratorParams params,
                                                                    int max_attempts = 100) {
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        Instance inst = generate_instance(params);
        if (validate_instance(inst).ok()) {
            return GeneratedInstance{std::move(inst), params.seed, attempt};
        }
        params.seed += 1;
    }
    return std::nullopt;
}

}  // namespace enpack

#endif  // ENPACK_GENERATOR_HPP
