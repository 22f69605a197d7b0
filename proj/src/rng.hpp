#pragma once

#include <cstdint>
#include <random>

namespace rvhedge::detail {

// splitmix64 step, used to decorrelate per-path substreams from one master
// seed without coupling nearby seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t mixed = splitmix64(s) ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return std::mt19937_64(splitmix64(mixed));
}

} // namespace rvhedge::detail
