#pragma once

#include <cstdint>
#include <random>

namespace qlogic {

// splitmix64 finaliser; decorrelates consecutive seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of substream `index` of `base`. Trials and bootstrap iterations use
/// one substream each so that results do not depend on evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t stream = 0) noexcept {
    return mix64(mix64(base ^ mix64(stream)) + index);
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(mix64(seed)); }

}  // namespace qlogic
