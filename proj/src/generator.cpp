#include "otf/generator.hpp"

#include <vector>

namespace otf {

GenParams sample_params(SplitMix64& rng, std::size_t seed_count, std::size_t noise_count) {
    GenParams p;
    p.s = rng.next_index(static_cast<std::uint32_t>(seed_count));
    p.m = rng.next_index(static_cast<std::uint32_t>(noise_count));
    p.lambda1 = rng.next_unit();
    p.lambda2 = rng.next_unit();
    return p;
}

SyntheticProfile synthesize(const SeedStore& store, const GenParams& params) {
    if (params.s >= store.seed_count() || params.m >= store.noise_count()) {
        throw Error(ErrorCode::IndexOutOfRange, "params (s=" + std::to_string(params.s) + ", m=" +
                                                    std::to_string(params.m) + ") outside store of " +
                                                    std::to_string(store.seed_count()) + " seeds, " +
                                                    std::to_string(store.noise_count()) + " noises");
    }
    if (!(params.lambda1 >= 0.0 && params.lambda1 <= 1.0 && params.lambda2 >= 0.0 && params.lambda2 <= 1.0)) {
        throw Error(ErrorCode::InvalidInput, "lambda outside [0, 1]");
    }
    const auto& seed = store.seeds()[params.s];
    SyntheticProfile profile;
    profile.values = mix(seed.values, store.noises()[params.m].values, params.lambda1, params.lambda2);
    profile.params = params;
    profile.label = seed.label;
    return profile;
}

Generator::Generator(const SeedStore& store, GeneratorConfig config)
    : store_(store), config_(std::move(config)), rng_(config_.rng_seed) {
    if (config_.batch_size < 1) {
        throw Error(ErrorCode::InvalidInput, "batch_size must be >= 1");
    }
    if (config_.param_policy == ParamPolicy::Replay) {
        replay_ = load(config_.replay_ledger, store_);
    }
    ledger_ = Ledger(replay_ ? replay_->header()
                             : LedgerHeader{1, config_.rng_seed, config_.batch_size, store_.manifest_digest()});
}

Generator::Generator(const SeedStore& store, GeneratorConfig config, Ledger replay)
    : Generator(store, [&] {
          config.param_policy = ParamPolicy::UniformRandom;
          return config;
      }()) {
    config_.param_policy = ParamPolicy::Replay;
    replay_ = std::move(replay);
    ledger_ = Ledger(replay_->header());
}

const Batch& Generator::request_data() { return request_data(config_.batch_size); }

const Batch& Generator::request_data(std::uint32_t batch_size) {
    if (batch_size < 1) {
        throw Error(ErrorCode::InvalidInput, "batch_size must be >= 1");
    }
    release();

    const std::uint64_t state_before = rng_.state();
    std::vector<GenParams> params;
    if (replay_) {
        const auto records = replay_->batch(next_index_);
        if (records.empty()) {
            throw Error(ErrorCode::ReplayExhausted,
                        "ledger has no records for batch " + std::to_string(next_index_));
        }
        for (const auto& r : records) params.push_back(r.params);
    } else {
        params.reserve(batch_size);
        for (std::uint32_t i = 0; i < batch_size; ++i) params.push_back(sample_params(rng_, store_));
    }

    current_.index = next_index_++;
    current_.rng_state_before = state_before;
    current_.profiles.reserve(params.size());
    for (const auto& p : params) current_.profiles.push_back(synthesize(store_, p));
    has_current_ = true;
    current_recorded_ = false;
    return current_;
}

void Generator::record_current() {
    if (!has_current_ || current_recorded_) return;
    std::vector<LedgerRecord> records;
    records.reserve(current_.profiles.size());
    for (std::uint32_t i = 0; i < current_.profiles.size(); ++i) {
        records.push_back({current_.index, i, current_.profiles[i].params});
    }
    ledger_.append(records);
    current_recorded_ = true;
    if (config_.spill_every > 0 && (current_.index + 1) % config_.spill_every == 0) {
        save(ledger_, config_.spill_path);
    }
}

void Generator::release() {
    if (!has_current_) return;
    record_current();
    // Free the storage outright so the next batch does not stack on top of it.
    std::vector<SyntheticProfile>().swap(current_.profiles);
    has_current_ = false;
}

std::size_t Generator::save_parameters(const std::filesystem::path& path) {
    record_current();
    return save(ledger_, path);
}

Batch regenerate(const SeedStore& store, const Ledger& ledger, std::uint32_t batch_index) {
    const auto records = ledger.batch(batch_index);
    if (records.empty()) {
        throw Error(ErrorCode::UnknownBatch, "ledger has no batch " + std::to_string(batch_index));
    }
    Batch batch;
    batch.index = batch_index;
    batch.profiles.reserve(records.size());
    for (const auto& r : records) batch.profiles.push_back(synthesize(store, r.params));
    return batch;
}

}  // namespace otf
