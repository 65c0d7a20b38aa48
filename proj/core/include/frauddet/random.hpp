#pragma once

#include <cstdint>
#include <random>

namespace frauddet {

/// splitmix64 step; used to derive independent child seeds from a base seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic seed derivation. derive_seed(s, a) == derive_seed(s, a, 0),
/// so a pipeline stage indexed by (model, cluster) collapses to the flat
/// pipeline's seed when cluster == 0.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a = 0,
                                 std::uint64_t b = 0) {
    std::uint64_t s = base;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= b * 0xc2b2ae3d27d4eb4fULL;
    h ^= splitmix64(s);
    return h;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(seed);
}

}  // namespace frauddet
