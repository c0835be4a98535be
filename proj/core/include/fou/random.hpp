#pragma once

#include <cstdint>
#include <random>

namespace fou {

using Engine = std::mt19937_64;

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed for stream `stream` of experiment seed `seed`. Depends only on the
// pair, never on scheduling order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

inline Engine make_engine(std::uint64_t seed) { return Engine(mix64(seed)); }

}  // namespace fou
