#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "otf/profile.hpp"

namespace otf {

// Seed and noise libraries held in RAM for the whole run. Immutable after
// construction, so one store may be shared across threads.
class SeedStore {
public:
    // Validates the store invariants: at least one seed and one noise, one
    // common length, finite samples, unique seed ids.
    SeedStore(std::vector<SeedProfile> seeds, std::vector<NoiseProfile> noises, std::uint64_t manifest_digest = 0);

    const std::vector<SeedProfile>& seeds() const { return seeds_; }
    const std::vector<NoiseProfile>& noises() const { return noises_; }
    std::size_t seed_count() const { return seeds_.size(); }
    std::size_t noise_count() const { return noises_.size(); }
    std::size_t profile_length() const { return profile_length_; }
    std::uint32_t resolution_seconds() const { return seeds_.front().resolution_seconds; }
    std::uint64_t manifest_digest() const { return manifest_digest_; }
    std::size_t file_count() const { return seeds_.size() + noises_.size(); }

private:
    std::vector<SeedProfile> seeds_;
    std::vector<NoiseProfile> noises_;
    std::size_t profile_length_ = 0;
    std::uint64_t manifest_digest_ = 0;
};

struct Manifest {
    std::uint32_t resolution_seconds = 1;
    std::vector<std::filesystem::path> seeds;
    std::vector<std::filesystem::path> noises;

    // Profile paths are resolved against `base` when relative.
    static Manifest parse(std::string_view json_text, const std::filesystem::path& base);
};

// FNV-1a over the manifest's bytes; binds a ledger to the store it came from.
std::uint64_t manifest_digest(const std::filesystem::path& manifest_path);

// Reads every referenced profile file once through the counting facade.
SeedStore load_seed_store(const std::filesystem::path& manifest_path);

}  // namespace otf
