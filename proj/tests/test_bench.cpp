#include <gtest/gtest.h>

#include "otf/bench.hpp"
#include "otf/generator.hpp"
#include "test_support.hpp"

namespace otf::bench {
namespace {

Workload small_workload(const std::filesystem::path& dir, std::uint32_t batches = 6, std::uint32_t batch_size = 3) {
    Workload w;
    w.manifest = testing::small_store(dir / "store", 96, 4, 3);
    w.batch_size = batch_size;
    w.num_batches = batches;
    w.rng_seed = 12;
    w.output_dir = dir / "out";
    return w;
}

TEST(Pregeneration, WritesAndReadsBackEveryBatch) {
    const auto dir = testing::scratch_dir();
    const auto w = small_workload(dir, 20);
    const auto run = run_pregeneration(w);
    EXPECT_EQ(run.io.write_instances, 20u);
    EXPECT_EQ(run.io.read_instances, 7u + 20u);
    // Every written batch is read back exactly once.
    EXPECT_EQ(run.io.write_instances - (run.io.read_instances - 7u), 0u);
    EXPECT_EQ(run.io.bytes_read - run.seed_bytes, run.io.bytes_written);
    for (std::uint32_t b = 0; b < 20; ++b) EXPECT_TRUE(std::filesystem::exists(batch_file(dir / "out" / "pg", b)));
}

TEST(Pregeneration, SingleBatch) {
    const auto dir = testing::scratch_dir();
    const auto run = run_pregeneration(small_workload(dir, 1));
    EXPECT_EQ(run.io.write_instances, 1u);
    EXPECT_EQ(run.io.read_instances, 7u + 1u);
}

TEST(Otf, WritesOnlyTheLedger) {
    const auto dir = testing::scratch_dir();
    const auto w = small_workload(dir, 20, 10);
    const auto run = run_otf(w);
    EXPECT_EQ(run.io.write_instances, 1u);
    EXPECT_EQ(run.io.read_instances, 7u);
    EXPECT_EQ(run.io.bytes_written, kLedgerHeaderBytes + 200 * kLedgerRecordBytes);
    EXPECT_EQ(run.total_disk_bytes, run.seed_bytes + run.io.bytes_written);
    EXPECT_EQ(std::filesystem::file_size(ledger_file(w)), run.io.bytes_written);
}

TEST(CrossPipeline, StreamEqualsPregeneratedFilesAndRegeneration) {
    const auto dir = testing::scratch_dir();
    const auto w = small_workload(dir, 7, 4);
    std::vector<std::uint8_t> streamed;
    const auto otf = run_otf(w, [&](const Batch& batch) {
        const auto bytes = encode_batch(batch);
        streamed.insert(streamed.end(), bytes.begin(), bytes.end());
    });
    const auto pg = run_pregeneration(w);
    EXPECT_EQ(otf.checksum, pg.checksum);

    std::vector<std::uint8_t> on_disk;
    std::vector<std::uint8_t> regenerated;
    const SeedStore store = load_seed_store(w.manifest);
    const Ledger ledger = load(ledger_file(w), store);
    for (std::uint32_t b = 0; b < w.num_batches; ++b) {
        const auto file = io::counted_read_file(batch_file(w.output_dir / "pg", b));
        on_disk.insert(on_disk.end(), file.begin(), file.end());
        const auto bytes = encode_batch(regenerate(store, ledger, b));
        regenerated.insert(regenerated.end(), bytes.begin(), bytes.end());
    }
    EXPECT_EQ(streamed, on_disk);
    EXPECT_EQ(regenerated, on_disk);
}

TEST(ComparePipelines, DeskLikeWorkloadPassesAllHardChecks) {
    const auto dir = testing::scratch_dir();
    const auto w = small_workload(dir, 20, 10);
    const auto report = compare_pipelines(w);
    EXPECT_TRUE(report.io_law_pg);
    EXPECT_TRUE(report.io_law_otf);
    EXPECT_TRUE(report.checksums_match);
    EXPECT_TRUE(report.disk.holds);
    EXPECT_TRUE(report.rw.holds);
    EXPECT_EQ(report.exit_code(), 0);
    EXPECT_EQ(report.pg.io.instances(), 7u + 40u);
    EXPECT_EQ(report.otf.io.instances(), 7u + 1u);
    EXPECT_EQ(report.predicted.N_RW_PG, report.pg.io.instances());
    EXPECT_EQ(report.predicted.N_RW_OTF, report.otf.io.instances());
    // Data bytes per ledger byte at least profile_length * 8 / 40.
    const double ratio = static_cast<double>(report.pg.io.bytes_written) / static_cast<double>(report.otf.io.bytes_written);
    EXPECT_GE(ratio * 1.01, 96.0 * 8.0 / 40.0);
    EXPECT_EQ(report.pg.peak_batch_bytes, 10u * 96u * 8u);
    EXPECT_EQ(report.otf.peak_batch_bytes, 10u * 96u * 8u);

    const auto text = format_text(report);
    EXPECT_NE(text.find("IO law (N_S + 2 N_B, N_S + 1): yes, yes"), std::string::npos);
    EXPECT_NE(text.find("disk verdict: holds"), std::string::npos);
    const auto csv = format_csv(report);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(ComparePipelines, BrokenVerdictGivesExitTwo) {
    BenchReport report;
    report.io_law_pg = report.io_law_otf = report.checksums_match = true;
    report.disk = {true, true};
    report.rw = {true, true};
    report.time = {true, false};  // timing is advisory only
    EXPECT_EQ(report.exit_code(), 0);
    report.rw = {true, false};
    EXPECT_EQ(report.exit_code(), 2);
    report.rw = {false, false};
    EXPECT_EQ(report.exit_code(), 0);
    report.checksums_match = false;
    EXPECT_EQ(report.exit_code(), 2);
}

TEST(Workload, Validation) {
    Workload w;
    w.output_dir = "x";
    w.num_batches = 0;
    EXPECT_THROW(w.validate(), Error);
    w.num_batches = 1;
    w.batch_size = 0;
    EXPECT_THROW(w.validate(), Error);
}

TEST(Workload, MissingManifestIsAnError) {
    const auto dir = testing::scratch_dir();
    Workload w;
    w.manifest = dir / "absent.json";
    w.output_dir = dir / "out";
    try {
        run_otf(w);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingFile);
    }
}

}  // namespace
}  // namespace otf::bench
