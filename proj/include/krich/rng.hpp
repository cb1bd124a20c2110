#pragma once

#include <cstdint>
#include <random>

#include "krich/error.hpp"

namespace krich {

/// Deterministic RNG wrapper. Draws go through our own rejection sampler so
/// the stream of values for a given seed is identical on every platform and
/// standard library (std::uniform_int_distribution makes no such promise).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform value in [0, bound), bound > 0, by rejection.
    std::uint64_t below(std::uint64_t bound) {
        detail::require(bound > 0, "Rng::below needs a positive bound");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t v = engine_();
            if (v < limit) return v % bound;
        }
    }

    /// Uniform value in [lo, hi], inclusive on both ends.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        detail::require(lo <= hi, "Rng::between needs lo <= hi");
        std::uint64_t span =
            static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());  // full range
        return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + below(span));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace krich
