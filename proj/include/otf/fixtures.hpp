#pragma once

#include <cstdint>
#include <filesystem>

namespace otf::fixtures {

// Desk-scale store: synthetic daily load shapes, repeated for multi-day
// lengths.
//   commercial:  0.3 + A * plateau(08:00..18:00), logistic edges 0.5 h wide
//   residential: 0.3 + A * (0.9 * g(7.5 h, 1.2 h) + 1.2 * g(19 h, 1.8 h)),
//                g(mu, sigma) an unnormalized Gaussian bump in time of day
//   noise:       i.i.d. uniform on [0, noise_amplitude) from SplitMix64
// A = 1 + 0.04 * (k - 2) for the k-th seed of its class. Seeds alternate
// commercial, residential, ...
struct FixtureSpec {
    std::uint32_t seeds = 10;
    std::uint32_t noises = 20;
    std::uint32_t profile_length = 86400;
    std::uint32_t resolution_seconds = 1;
    double noise_amplitude = 0.1;
    std::uint64_t rng_seed = 2024;
};

// Writes seed_XX.otf, noise_XX.otf and manifest.json into `dir`; returns the
// manifest path.
std::filesystem::path write_store(const std::filesystem::path& dir, const FixtureSpec& spec = {});

}  // namespace otf::fixtures
