#pragma once

#include <cstdint>

namespace otf {

// SplitMix64 (Steele, Lea & Flood). One state advance per scalar draw, so
// any language with wrapping 64-bit arithmetic reproduces the stream exactly.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 bits of resolution.
    constexpr double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on [0, n) by multiply-shift; n must be nonzero.
    constexpr std::uint32_t next_index(std::uint32_t n) {
        return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    constexpr std::uint64_t state() const { return state_; }
    constexpr void set_state(std::uint64_t state) { state_ = state; }

private:
    std::uint64_t state_;
};

}  // namespace otf
