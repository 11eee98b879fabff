#pragma once

#include <cstdint>

namespace lqso {

__extension__ typedef unsigned __int128 uint128;

/// SplitMix64 (Steele, Lea, Flood 2014): 64-bit state, output fully
/// specified, so streams are identical on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's method, unbiased).
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        uint128 m = (uint128)next() * bound;
        auto low = std::uint64_t(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = (uint128)next() * bound;
                low = std::uint64_t(m);
            }
        }
        return std::uint64_t(m >> 64);
    }

private:
    std::uint64_t state_;
};

/// Seed for an independent stream identified by (seed, a, b).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept
{
    SplitMix64 mix(seed ^ 0x6a09e667f3bcc909ULL);
    std::uint64_t h = mix.next();
    mix = SplitMix64(h ^ a);
    h = mix.next();
    mix = SplitMix64(h ^ (b * 0x9e3779b97f4a7c15ULL));
    return mix.next();
}

} // namespace lqso
