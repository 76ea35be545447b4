#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>

#include <Eigen/Core>

#include "otf/ledger.hpp"
#include "otf/profile.hpp"
#include "otf/rng.hpp"
#include "otf/seed_store.hpp"

namespace otf {

// Scaled seed plus scaled noise, evaluated per element as
// (seed[i] * lambda1) + (noise[i] * lambda2) with no reassociation.
template <typename SeedDerived, typename NoiseDerived>
auto mix(const Eigen::MatrixBase<SeedDerived>& seed, const Eigen::MatrixBase<NoiseDerived>& noise,
         typename SeedDerived::Scalar lambda1, typename SeedDerived::Scalar lambda2) {
    return seed * lambda1 + noise * lambda2;
}

// Four draws, in order: seed index, noise index, lambda1, lambda2.
GenParams sample_params(SplitMix64& rng, std::size_t seed_count, std::size_t noise_count);
inline GenParams sample_params(SplitMix64& rng, const SeedStore& store) {
    return sample_params(rng, store.seed_count(), store.noise_count());
}

SyntheticProfile synthesize(const SeedStore& store, const GenParams& params);

enum class ParamPolicy { UniformRandom, Replay };

struct GeneratorConfig {
    std::uint32_t batch_size = 10;
    std::uint64_t rng_seed = 0;
    ParamPolicy param_policy = ParamPolicy::UniformRandom;
    // Ledger to replay when param_policy is Replay.
    std::filesystem::path replay_ledger;
    // Rewrite the ledger to spill_path every `spill_every` batches; 0 keeps it in RAM until saved.
    std::uint32_t spill_every = 0;
    std::filesystem::path spill_path;
};

// Streaming generator. Holds at most one batch: each request records the
// parameters of the previous batch in the ledger buffer, frees it, and
// synthesizes the next one from the resident store.
//
// The store must outlive the generator. Not thread-safe; callers serialize
// requests.
class Generator {
public:
    Generator(const SeedStore& store, GeneratorConfig config);
    // Replay from an already loaded ledger, bypassing config.replay_ledger.
    Generator(const SeedStore& store, GeneratorConfig config, Ledger replay);

    // The returned batch stays valid until the next request or release().
    const Batch& request_data();
    const Batch& request_data(std::uint32_t batch_size);

    // Records and frees the current batch, if any.
    void release();

    // Records the outstanding batch and writes the ledger: one write instance.
    std::size_t save_parameters(const std::filesystem::path& path);

    // Records of every batch discarded so far (the current batch is not yet
    // in here; see release()).
    const Ledger& ledger() const { return ledger_; }
    const Batch* current() const { return has_current_ ? &current_ : nullptr; }
    std::uint32_t batches_produced() const { return next_index_; }
    const GeneratorConfig& config() const { return config_; }
    const SeedStore& store() const { return store_; }

private:
    void record_current();

    const SeedStore& store_;
    GeneratorConfig config_;
    SplitMix64 rng_;
    Ledger ledger_;
    std::optional<Ledger> replay_;
    Batch current_;
    bool has_current_ = false;
    bool current_recorded_ = false;
    std::uint32_t next_index_ = 0;
};

// Rebuilds one batch from its ledger records.
Batch regenerate(const SeedStore& store, const Ledger& ledger, std::uint32_t batch_index);

}  // namespace otf
