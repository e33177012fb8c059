#pragma once

#include <cstdint>

namespace perp {

// Deterministic, portable PRNGs used by the synthetic generator. Streams are
// fully defined by their 64-bit seed; generation is identical across
// platforms and build types.

// splitmix64: used to expand (seed, stream_index) into stream states.
// Constants from the reference implementation.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// xorshift64* with the standard (12, 25, 27) shift triple and the
// 2685821657736338717 multiplier.
struct Xorshift64Star {
    std::uint64_t state;

    explicit Xorshift64Star(std::uint64_t seed) {
        // Never seed with zero; mix the seed so similar seeds diverge.
        SplitMix64 mixer(seed);
        state = mixer.next();
        if (state == 0) state = 0x9E3779B97F4A7C15ull;
    }

    std::uint64_t next_u64() {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        return state * 2685821657736338717ull;
    }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }
};

// Standard normal deviates via Box-Muller on the xorshift stream; draws are
// generated in pairs and consumed one at a time.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : rng_(seed) {}

    double next();

    // Stream state for path `index` of a multi-path run seeded by `seed`.
    static std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

private:
    Xorshift64Star rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace perp
