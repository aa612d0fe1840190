#pragma once

#include <cstdint>

namespace plurality {

// SplitMix64 step (Steele, Lea, Flood 2014).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

// Counter-derived random stream. The state is a hash of the master seed and
// up to two stream ids (e.g. round and vertex), so identical ids reproduce
// identical draws on every platform and under any scheduling.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) { splitmix64(state_); }
    RngStream(std::uint64_t seed, std::uint64_t id0)
        : RngStream(mix_u64(seed, id0)) {}
    RngStream(std::uint64_t seed, std::uint64_t id0, std::uint64_t id1)
        : RngStream(mix_u64(mix_u64(seed, id0), id1)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Unbiased integer in [0, bound), bound >= 1. Lemire's method with rejection.
    std::uint64_t next_below(std::uint64_t bound);

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace plurality
