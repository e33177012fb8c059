#include "perp/rng.hpp"

#include <cmath>

namespace perp {

double GaussianRng::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller; u1 is kept away from zero so log(u1) is finite.
    double u1 = rng_.next_uniform();
    while (u1 <= 0.0) u1 = rng_.next_uniform();
    const double u2 = rng_.next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    spare_ = radius * std::sin(two_pi * u2);
    have_spare_ = true;
    return radius * std::cos(two_pi * u2);
}

std::uint64_t GaussianRng::stream_seed(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed);
    std::uint64_t base = mixer.next();
    // Decorrelate consecutive path indices with a second mixing pass.
    SplitMix64 stream(base ^ (index * 0xD1B54A32D192ED03ull + 0x2545F4914F6CDD1Dull));
    return stream.next();
}

}  // namespace perp
