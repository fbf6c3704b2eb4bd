#pragma once

/// @file rng.hpp
/// @brief Counter-based 64-bit generator and seed derivation.
///
/// Every random stream in driftlab is a SplitMix64 sequence: the state is a
/// counter advanced by the golden-ratio increment and each output is the
/// counter passed through the SplitMix64 finalizer. Per-run seeds are derived
/// as `derive_seed(master, index)`, so the seed of run `i` never depends on
/// how runs are scheduled across threads.

#include <concepts>
#include <cstdint>

namespace driftlab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of stream `index` under `master`.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(master ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

class SplitMix64 {
public:
    static constexpr std::uint64_t increment = 0x9e3779b97f4a7c15ULL;

    constexpr explicit SplitMix64(std::uint64_t seed) noexcept : counter_(seed) {}

    constexpr std::uint64_t next_u64() noexcept {
        counter_ += increment;
        return mix64(counter_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer on [0, bound); Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) noexcept {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    [[nodiscard]] constexpr std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t counter_;
};

/// Anything that hands out uniform doubles on [0, 1).
template <typename G>
concept UniformSource = requires(G& g) {
    { g.uniform() } -> std::convertible_to<double>;
};

}  // namespace driftlab
