#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>

#include "otf/cost_model.hpp"
#include "otf/io.hpp"
#include "otf/profile.hpp"

namespace otf::bench {

struct Workload {
    std::filesystem::path manifest;
    std::uint32_t batch_size = 10;
    std::uint32_t num_batches = 20;
    std::uint64_t rng_seed = 0;
    std::filesystem::path output_dir;

    void validate() const;
};

struct PipelineRun {
    double wall_seconds = 0.0;
    io::IoCounters io;
    std::uint64_t peak_batch_bytes = 0;
    // Seed files on disk plus everything the pipeline wrote.
    std::uint64_t total_disk_bytes = 0;
    std::uint64_t seed_bytes = 0;
    std::uint64_t checksum = 0;

    // Phase timings feeding the predicted cost report.
    double seed_read_seconds = 0.0;
    double generate_seconds = 0.0;
    double write_seconds = 0.0;
    double read_back_seconds = 0.0;
};

struct BenchReport {
    Workload workload;
    std::size_t seed_files = 0;
    std::size_t profile_length = 0;
    PipelineRun pg;
    PipelineRun otf;

    // Computed from measured values only.
    cost::Verdict disk;
    cost::Verdict rw;
    cost::Verdict time;
    bool io_law_pg = false;   // PG instances == N_S + 2 N_B
    bool io_law_otf = false;  // OTF instances == N_S + 1
    bool checksums_match = false;

    cost::CostReport predicted;

    // 0 when every hard check passes, 2 otherwise. Wall time is advisory.
    int exit_code() const;
};

// Running checksum over profile samples (64-bit FNV-1a of their bytes).
std::uint64_t fold_checksum(std::uint64_t hash, const Series& values);

std::filesystem::path batch_file(const std::filesystem::path& dir, std::uint32_t batch_index);
std::filesystem::path ledger_file(const Workload& workload);

// Baseline: generate every batch and write it, then read all of them back
// for the analytics phase. Batch files land in output_dir/pg.
PipelineRun run_pregeneration(const Workload& workload);

// Streams every batch through `consumer` (a checksum fold when empty) and
// writes only the ledger, to output_dir/otf/params.otfl.
PipelineRun run_otf(const Workload& workload, const std::function<void(const Batch&)>& consumer = {});

BenchReport compare_pipelines(const Workload& workload);

std::string format_text(const BenchReport& report);
std::string format_csv(const BenchReport& report);

}  // namespace otf::bench
