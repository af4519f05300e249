#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace peersel {

// splitmix64 finalizer; good avalanche for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d49b3133111ebULL;
    return z ^ (z >> 31);
}

// Derive an independent sub-seed from a master seed and a path of tags
// (cell id, trial index, purpose, agent id, ...). Counter-based, so parallel
// and serial runs agree.
inline std::uint64_t sub_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = mix64(master);
    for (auto tag : path) s = mix64(s ^ mix64(tag));
    return s;
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
    return std::mt19937_64(mix64(seed));
}

// Purpose tags for sub-seeding within a trial.
namespace seed_tag {
constexpr std::uint64_t assignment = 1;
constexpr std::uint64_t clustered_assignment = 2;
constexpr std::uint64_t mallows = 3;
constexpr std::uint64_t peernomination = 4;
constexpr std::uint64_t partition_extras = 5;
constexpr std::uint64_t apportionment = 6;
}  // namespace seed_tag

}  // namespace peersel
