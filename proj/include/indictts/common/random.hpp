#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace indictts {

// Default seed for every seeded operation (CLI --seed default).
constexpr std::uint64_t kDefaultSeed = 2020;

// Fisher-Yates permutation of [0, n) driven by mt19937_64 with an explicit
// bounded draw, so the result is identical across standard libraries.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

// Uniform in [0, 1) from the top 53 bits of one draw; unlike
// std::uniform_real_distribution this is the same everywhere.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// 64-bit FNV-1a; stable seed derivation from strings.
std::uint64_t fnv1a(std::string_view data, std::uint64_t basis = 0xcbf29ce484222325ULL);

}  // namespace indictts
