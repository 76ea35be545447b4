#include "otf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "otf/generator.hpp"
#include "otf/ledger.hpp"

namespace otf::bench {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t batch_checksum(std::uint64_t hash, const Batch& batch) {
    for (const auto& p : batch.profiles) hash = fold_checksum(hash, p.values);
    return hash;
}

}  // namespace

void Workload::validate() const {
    if (batch_size < 1) throw Error(ErrorCode::InvalidInput, "batch_size must be >= 1");
    if (num_batches < 1) throw Error(ErrorCode::InvalidInput, "num_batches must be >= 1");
    if (output_dir.empty()) throw Error(ErrorCode::InvalidInput, "output directory is required");
}

int BenchReport::exit_code() const {
    const bool hard_failure = disk.failed() || rw.failed() || !io_law_pg || !io_law_otf || !checksums_match;
    return hard_failure ? 2 : 0;
}

std::uint64_t fold_checksum(std::uint64_t hash, const Series& values) {
    return binary::fnv1a(
        std::span(reinterpret_cast<const std::uint8_t*>(values.data()), values.size() * sizeof(double)), hash);
}

std::filesystem::path batch_file(const std::filesystem::path& dir, std::uint32_t batch_index) {
    char name[32];
    std::snprintf(name, sizeof name, "batch_%05u.otf", batch_index);
    return dir / name;
}

std::filesystem::path ledger_file(const Workload& workload) { return workload.output_dir / "otf" / "params.otfl"; }

PipelineRun run_pregeneration(const Workload& workload) {
    workload.validate();
    const auto dir = workload.output_dir / "pg";
    std::filesystem::create_directories(dir);

    PipelineRun run;
    const auto before = io::snapshot();
    const auto start = Clock::now();

    const SeedStore store = load_seed_store(workload.manifest);
    run.seed_read_seconds = seconds_since(start);
    run.seed_bytes = (io::snapshot() - before).bytes_read;

    // Generation phase: same parameter stream as the streaming generator.
    SplitMix64 rng(workload.rng_seed);
    for (std::uint32_t b = 0; b < workload.num_batches; ++b) {
        auto t = Clock::now();
        Batch batch;
        batch.index = b;
        batch.rng_state_before = rng.state();
        batch.profiles.reserve(workload.batch_size);
        for (std::uint32_t i = 0; i < workload.batch_size; ++i) {
            batch.profiles.push_back(synthesize(store, sample_params(rng, store)));
        }
        run.generate_seconds += seconds_since(t);
        run.peak_batch_bytes = std::max<std::uint64_t>(run.peak_batch_bytes, batch.bytes());

        t = Clock::now();
        io::counted_write_file(batch_file(dir, b), encode_batch(batch));
        run.write_seconds += seconds_since(t);
    }

    // Analytics phase reads the dataset back one batch file at a time.
    std::uint64_t checksum = binary::fnv1a_offset;
    for (std::uint32_t b = 0; b < workload.num_batches; ++b) {
        const auto t = Clock::now();
        const auto records = decode_batch(io::counted_read_file(batch_file(dir, b)));
        run.read_back_seconds += seconds_since(t);
        std::uint64_t bytes = 0;
        for (const auto& r : records) {
            checksum = fold_checksum(checksum, r.values);
            bytes += r.values.size() * sizeof(double);
        }
        run.peak_batch_bytes = std::max(run.peak_batch_bytes, bytes);
    }

    run.wall_seconds = seconds_since(start);
    run.io = io::snapshot() - before;
    run.checksum = checksum;
    run.total_disk_bytes = run.seed_bytes + run.io.bytes_written;
    return run;
}

PipelineRun run_otf(const Workload& workload, const std::function<void(const Batch&)>& consumer) {
    workload.validate();
    std::filesystem::create_directories(ledger_file(workload).parent_path());

    PipelineRun run;
    const auto before = io::snapshot();
    const auto start = Clock::now();

    const SeedStore store = load_seed_store(workload.manifest);
    run.seed_read_seconds = seconds_since(start);
    run.seed_bytes = (io::snapshot() - before).bytes_read;

    GeneratorConfig config;
    config.batch_size = workload.batch_size;
    config.rng_seed = workload.rng_seed;
    Generator generator(store, config);
    std::uint64_t checksum = binary::fnv1a_offset;
    for (std::uint32_t b = 0; b < workload.num_batches; ++b) {
        const auto t = Clock::now();
        const Batch& batch = generator.request_data();
        run.generate_seconds += seconds_since(t);
        run.peak_batch_bytes = std::max<std::uint64_t>(run.peak_batch_bytes, batch.bytes());
        if (consumer) consumer(batch);
        checksum = batch_checksum(checksum, batch);
    }
    generator.release();

    const auto t = Clock::now();
    generator.save_parameters(ledger_file(workload));
    run.write_seconds = seconds_since(t);

    run.wall_seconds = seconds_since(start);
    run.io = io::snapshot() - before;
    run.checksum = checksum;
    run.total_disk_bytes = run.seed_bytes + run.io.bytes_written;
    return run;
}

BenchReport compare_pipelines(const Workload& workload) {
    workload.validate();
    BenchReport report;
    report.workload = workload;
    {
        // Store shape for the closed-form checks; each pipeline measures its own counter delta.
        const SeedStore store = load_seed_store(workload.manifest);
        report.seed_files = store.file_count();
        report.profile_length = store.profile_length();
    }
    report.pg = run_pregeneration(workload);
    report.otf = run_otf(workload);

    const std::uint64_t n_s = report.seed_files;
    const std::uint64_t n_b = workload.num_batches;
    report.io_law_pg = report.pg.io.instances() == n_s + 2 * n_b && report.pg.io.write_instances == n_b &&
                       report.pg.io.read_instances == n_s + n_b;
    report.io_law_otf = report.otf.io.instances() == n_s + 1 && report.otf.io.write_instances == 1;
    report.checksums_match = report.pg.checksum == report.otf.checksum;

    const std::uint64_t data_bytes = report.pg.io.bytes_written;
    const std::uint64_t ledger_bytes = report.otf.io.bytes_written;
    report.disk = {data_bytes > ledger_bytes, report.otf.total_disk_bytes < report.pg.total_disk_bytes};
    report.rw = {n_b > 1, report.otf.io.instances() < report.pg.io.instances()};
    report.time = {data_bytes > ledger_bytes, report.otf.wall_seconds < report.pg.wall_seconds};

    // Model inputs in GB and s/GB, calibrated from the measured phases.
    constexpr double kGB = 1e9;
    constexpr double kMinSeconds = 1e-9;
    const double batch_gb = static_cast<double>(data_bytes) / static_cast<double>(n_b) / kGB;
    cost::CostInputs in;
    in.B = batch_gb;
    in.D = batch_gb * static_cast<double>(n_b);
    in.S = static_cast<double>(report.pg.seed_bytes) / kGB;
    in.N_S = n_s;
    in.ram_D = in.D;
    in.P_per_batch = static_cast<double>(workload.batch_size * kLedgerRecordBytes) / kGB;
    in.read_rate_s_per_GB = std::max(report.pg.read_back_seconds, kMinSeconds) / in.D;
    in.write_rate_s_per_GB = std::max(report.pg.write_seconds, kMinSeconds) / in.D;
    in.T_GB = std::max(report.otf.generate_seconds, kMinSeconds) / static_cast<double>(n_b);
    report.predicted = cost::compare(in);
    return report;
}

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string verdict(const cost::Verdict& v, bool advisory = false) {
    if (v.holds) return "holds";
    if (!v.assumption) return "fails (assumption not met)";
    return advisory ? "WARNING: fails" : "FAILS";
}

}  // namespace

std::string format_text(const BenchReport& r) {
    std::ostringstream out;
    char line[200];
    auto row = [&](const char* name, const std::string& pg, const std::string& otf) {
        std::snprintf(line, sizeof line, "%-24s %18s %18s\n", name, pg.c_str(), otf.c_str());
        out << line;
    };
    auto num = [](double v, const char* fmt = "%.3f") {
        char buf[64];
        std::snprintf(buf, sizeof buf, fmt, v);
        return std::string(buf);
    };
    out << "workload: " << r.seed_files << " seed files, profile length " << r.profile_length << ", "
        << r.workload.num_batches << " batches x " << r.workload.batch_size << " profiles, rng_seed "
        << r.workload.rng_seed << "\n";
    row("measured", "pre-generation", "on-the-fly");
    row("read instances", std::to_string(r.pg.io.read_instances), std::to_string(r.otf.io.read_instances));
    row("write instances", std::to_string(r.pg.io.write_instances), std::to_string(r.otf.io.write_instances));
    row("r/w instances", std::to_string(r.pg.io.instances()), std::to_string(r.otf.io.instances()));
    row("bytes written", std::to_string(r.pg.io.bytes_written), std::to_string(r.otf.io.bytes_written));
    row("total disk bytes", std::to_string(r.pg.total_disk_bytes), std::to_string(r.otf.total_disk_bytes));
    row("peak batch bytes", std::to_string(r.pg.peak_batch_bytes), std::to_string(r.otf.peak_batch_bytes));
    row("wall time (s)", num(r.pg.wall_seconds), num(r.otf.wall_seconds));
    row("predicted r/w instances", std::to_string(r.predicted.N_RW_PG), std::to_string(r.predicted.N_RW_OTF));
    row("predicted time (s)", num(r.predicted.T_PG), num(r.predicted.T_OTF));
    out << "IO law (N_S + 2 N_B, N_S + 1): " << yes_no(r.io_law_pg) << ", " << yes_no(r.io_law_otf) << "\n";
    out << "checksums match: " << yes_no(r.checksums_match) << "\n";
    out << "disk verdict: " << verdict(r.disk) << "\n";
    out << "r/w verdict:  " << verdict(r.rw) << "\n";
    out << "time verdict: " << verdict(r.time, true) << "\n";
    return out.str();
}

std::string format_csv(const BenchReport& r) {
    std::ostringstream out;
    out << "pipeline,read_instances,write_instances,bytes_read,bytes_written,total_disk_bytes,peak_batch_bytes,"
           "wall_seconds,checksum\n";
    for (const auto& [name, run] : {std::pair{"pg", &r.pg}, std::pair{"otf", &r.otf}}) {
        out << name << ',' << run->io.read_instances << ',' << run->io.write_instances << ',' << run->io.bytes_read
            << ',' << run->io.bytes_written << ',' << run->total_disk_bytes << ',' << run->peak_batch_bytes << ','
            << run->wall_seconds << ',' << run->checksum << '\n';
    }
    return out.str();
}

}  // namespace otf::bench
