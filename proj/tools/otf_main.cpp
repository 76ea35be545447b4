// otf: on-the-fly synthetic data generation, replay, cost estimation and
// benchmarking.
//
// Every subcommand accepts --config <file.json>. The JSON object's keys are
// option names (underscores or dashes); flags given on the command line
// override the file. Unknown keys are rejected.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "otf/bench.hpp"
#include "otf/cost_model.hpp"
#include "otf/demo.hpp"
#include "otf/fixtures.hpp"
#include "otf/generator.hpp"
#include "otf/io.hpp"
#include "otf/ledger.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const fs::path& path, const std::string& text) {
    otf::io::counted_write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string hex(std::uint64_t v) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

void kv(const char* key, const std::string& value) { std::printf("%-18s %s\n", key, value.c_str()); }

// Turns {"key": value, ...} into "--key value" tokens for `sub`.
std::vector<std::string> config_tokens(const CLI::App& sub, const fs::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(otf::io::read_metadata(path));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config " + path.string() + " must be a JSON object");
    std::vector<std::string> tokens;
    for (const auto& [key, value] : doc.items()) {
        std::string name = "--" + key;
        if (sub.get_option_no_throw(name) == nullptr) {
            std::string dashed = key;
            std::replace(dashed.begin(), dashed.end(), '_', '-');
            name = "--" + dashed;
        }
        if (key == "config" || sub.get_option_no_throw(name) == nullptr) {
            throw UsageError("unknown config key '" + key + "' for " + sub.get_name());
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back(name);
        } else if (value.is_string()) {
            tokens.push_back(name);
            fs::path p = value.get<std::string>();
            // Paths in a config file are relative to the file.
            const bool path_like = key.find("manifest") != std::string::npos || key.find("ledger") != std::string::npos ||
                                   key == "out" || key == "csv";
            tokens.push_back(path_like && p.is_relative() ? (path.parent_path() / p).string() : p.string());
        } else if (value.is_number()) {
            tokens.push_back(name);
            tokens.push_back(value.is_number_float() ? [&] {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
                return std::string(buf);
            }()
                                                     : value.dump());
        } else {
            throw UsageError("config key '" + key + "' must be a string, number or boolean");
        }
    }
    return tokens;
}

// ---- subcommand options ----

struct FixturesOpts {
    fs::path out;
    otf::fixtures::FixtureSpec spec;
};

struct GenerateOpts {
    fs::path manifest;
    fs::path ledger;
    std::uint32_t batch_size = 10;
    std::uint32_t batches = 20;
    std::uint64_t rng_seed = 0;
    std::uint32_t spill_every = 0;
};

struct RegenOpts {
    fs::path manifest;
    fs::path ledger;
    fs::path out;
    std::optional<std::uint32_t> batch;
};

struct EstimateOpts {
    otf::cost::CostInputs in;
    std::optional<double> ram_D;
    std::optional<double> P_per_batch;
    std::optional<double> P_total;
    fs::path csv;
};

struct BenchOpts {
    otf::bench::Workload workload;
    fs::path csv;
};

struct DemoOpts {
    fs::path manifest;
    std::uint32_t batch_size = 10;
    std::uint64_t rng_seed = 0;
    std::uint64_t test_rng_seed = 1;
    std::uint32_t test_batches = 1;
    otf::ml::TrainConfig train;
    fs::path csv;
    fs::path ledger;
};

// ---- subcommand bodies ----

int cmd_fixtures(const FixturesOpts& o) {
    const auto manifest = otf::fixtures::write_store(o.out, o.spec);
    kv("manifest", manifest.string());
    kv("seeds", std::to_string(o.spec.seeds));
    kv("noises", std::to_string(o.spec.noises));
    kv("profile length", std::to_string(o.spec.profile_length));
    return kExitOk;
}

int cmd_generate(const GenerateOpts& o, bool verbose) {
    otf::io::reset();
    const otf::SeedStore store = otf::load_seed_store(o.manifest);
    otf::GeneratorConfig config{.batch_size = o.batch_size, .rng_seed = o.rng_seed};
    if (o.spill_every > 0) {
        config.spill_every = o.spill_every;
        config.spill_path = o.ledger;
    }
    otf::Generator generator(store, config);
    std::uint64_t checksum = otf::binary::fnv1a_offset;
    std::uint64_t bytes = 0;
    for (std::uint32_t b = 0; b < o.batches; ++b) {
        const auto& batch = generator.request_data();
        for (const auto& p : batch.profiles) checksum = otf::bench::fold_checksum(checksum, p.values);
        bytes += batch.bytes();
        if (verbose) std::fprintf(stderr, "batch %u: %zu profiles\n", batch.index, batch.profiles.size());
    }
    generator.release();
    const auto ledger_bytes = generator.save_parameters(o.ledger);
    const auto io = otf::io::snapshot();

    kv("batches", std::to_string(generator.batches_produced()));
    kv("profiles", std::to_string(generator.ledger().size()));
    kv("profile length", std::to_string(store.profile_length()));
    kv("generated bytes", std::to_string(bytes));
    kv("ledger", o.ledger.string());
    kv("ledger bytes", std::to_string(ledger_bytes));
    kv("read_instances", std::to_string(io.read_instances));
    kv("write_instances", std::to_string(io.write_instances));
    kv("checksum", hex(checksum));
    return kExitOk;
}

int cmd_regen(const RegenOpts& o) {
    otf::io::reset();
    const otf::SeedStore store = otf::load_seed_store(o.manifest);
    const otf::Ledger ledger = otf::load(o.ledger, store);
    fs::create_directories(o.out);

    std::vector<std::uint32_t> batches;
    if (o.batch) {
        batches.push_back(*o.batch);
    } else {
        for (const auto& r : ledger.records()) {
            if (batches.empty() || batches.back() != r.batch_index) batches.push_back(r.batch_index);
        }
    }
    for (auto b : batches) {
        const otf::Batch batch = otf::regenerate(store, ledger, b);
        otf::io::counted_write_file(otf::bench::batch_file(o.out, b), otf::encode_batch(batch));
    }
    const auto io = otf::io::snapshot();
    kv("batches written", std::to_string(batches.size()));
    kv("bytes written", std::to_string(io.bytes_written));
    kv("output", o.out.string());
    return kExitOk;
}

int cmd_estimate(EstimateOpts o) {
    if (o.P_per_batch.has_value() == o.P_total.has_value()) {
        throw UsageError("exactly one of P_per_batch or P_total is required");
    }
    o.in.ram_D = o.ram_D.value_or(o.in.D);
    if (o.P_per_batch) {
        o.in.P_per_batch = *o.P_per_batch;
    } else {
        o.in.P_per_batch = *o.P_total / static_cast<double>(otf::cost::num_batches(o.in.D, o.in.B));
    }
    const auto report = otf::cost::compare(o.in);
    std::fputs(otf::cost::format_text(report).c_str(), stdout);
    if (!o.csv.empty()) write_text(o.csv, otf::cost::format_csv(report));
    return kExitOk;
}

int cmd_bench(const BenchOpts& o) {
    const auto report = otf::bench::compare_pipelines(o.workload);
    std::fputs(otf::bench::format_text(report).c_str(), stdout);
    if (!o.csv.empty()) write_text(o.csv, otf::bench::format_csv(report));
    return report.exit_code();
}

int cmd_demo(const DemoOpts& o) {
    const otf::SeedStore store = otf::load_seed_store(o.manifest);
    otf::Generator train_gen(store, {.batch_size = o.batch_size, .rng_seed = o.rng_seed});
    const auto result = otf::ml::train(train_gen, o.train);

    std::printf("%-6s %14s %8s\n", "epoch", "sum_error", "slices");
    std::string csv = "epoch,sum_error,slices\n";
    for (std::size_t e = 0; e < result.epoch_loss.size(); ++e) {
        std::printf("%-6zu %14.6f %8zu\n", e, result.epoch_loss[e], result.epoch_slices[e]);
        csv += std::to_string(e) + "," + std::to_string(result.epoch_loss[e]) + "," +
               std::to_string(result.epoch_slices[e]) + "\n";
    }
    otf::Generator test_gen(store, {.batch_size = o.batch_size, .rng_seed = o.test_rng_seed});
    const double accuracy = otf::ml::evaluate(result.classifier, test_gen, o.test_batches);
    std::printf("accuracy %.4f\n", accuracy);

    if (!o.ledger.empty()) train_gen.save_parameters(o.ledger);
    if (!o.csv.empty()) write_text(o.csv, csv);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"On-the-fly synthetic data generation toolkit"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Progress on stderr");
    std::string config_path;
    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config; command-line flags override it");
    };

    FixturesOpts fx;
    auto* fixtures = app.add_subcommand("fixtures", "Write the synthetic desk-scale seed/noise store");
    add_config(fixtures);
    fixtures->add_option("--out", fx.out, "Output directory")->required();
    fixtures->add_option("--seeds", fx.spec.seeds)->capture_default_str();
    fixtures->add_option("--noises", fx.spec.noises)->capture_default_str();
    fixtures->add_option("--length", fx.spec.profile_length, "Samples per profile")->capture_default_str();
    fixtures->add_option("--resolution", fx.spec.resolution_seconds, "Seconds per sample")->capture_default_str();
    fixtures->add_option("--noise-amplitude", fx.spec.noise_amplitude)->capture_default_str();
    fixtures->add_option("--rng-seed", fx.spec.rng_seed)->capture_default_str();

    GenerateOpts gen;
    auto* generate = app.add_subcommand("generate", "Stream batches through a checksum consumer and save the ledger");
    add_config(generate);
    generate->add_option("--manifest", gen.manifest)->required();
    generate->add_option("--ledger", gen.ledger, "Ledger output path")->required();
    generate->add_option("--batch-size", gen.batch_size)->capture_default_str();
    generate->add_option("--batches", gen.batches)->capture_default_str();
    generate->add_option("--rng-seed", gen.rng_seed)->capture_default_str();
    generate->add_option("--spill-every", gen.spill_every, "Rewrite the ledger every k batches (0: once at end)")
        ->capture_default_str();

    RegenOpts rg;
    auto* regen = app.add_subcommand("regen", "Rebuild batches from a ledger as batch files");
    add_config(regen);
    regen->add_option("--manifest", rg.manifest)->required();
    regen->add_option("--ledger", rg.ledger)->required();
    regen->add_option("--out", rg.out, "Output directory")->required();
    regen->add_option("--batch", rg.batch, "Only this batch (default: all)");

    EstimateOpts est;
    auto* estimate = app.add_subcommand("estimate", "Analytical disk/IO/time cost of both pipelines");
    add_config(estimate);
    estimate->add_option("--D", est.in.D, "Dataset size (GB)")->required();
    estimate->add_option("--B", est.in.B, "Batch size (GB)")->required();
    estimate->add_option("--S", est.in.S, "Seed data size (GB)")->required();
    estimate->add_option("--N_S", est.in.N_S, "Seed file count")->capture_default_str();
    estimate->add_option("--ram_D", est.ram_D, "RAM for the whole dataset (GB, default D)");
    estimate->add_option("--P_per_batch", est.P_per_batch, "Parameter size per batch (GB)");
    estimate->add_option("--P_total", est.P_total, "Parameter size for the whole dataset (GB)");
    estimate->add_option("--read_rate_s_per_GB", est.in.read_rate_s_per_GB)->required();
    estimate->add_option("--write_rate_s_per_GB", est.in.write_rate_s_per_GB)->required();
    estimate->add_option("--T_GB", est.in.T_GB, "Generation seconds per batch")->required();
    estimate->add_option("--csv", est.csv, "Also write the report as CSV");

    BenchOpts bo;
    auto* bench = app.add_subcommand("bench", "Run both pipelines and compare measured costs");
    add_config(bench);
    bench->add_option("--manifest", bo.workload.manifest)->required();
    bench->add_option("--out", bo.workload.output_dir, "Working directory for batch files and ledger")->required();
    bench->add_option("--batch-size", bo.workload.batch_size)->capture_default_str();
    bench->add_option("--batches", bo.workload.num_batches)->capture_default_str();
    bench->add_option("--rng-seed", bo.workload.rng_seed)->capture_default_str();
    bench->add_option("--csv", bo.csv, "Also write the report as CSV");

    DemoOpts dm;
    auto* demo = app.add_subcommand("demo", "Train and test the residential/commercial classifier on streamed data");
    add_config(demo);
    demo->add_option("--manifest", dm.manifest)->required();
    demo->add_option("--epochs", dm.train.epochs)->capture_default_str();
    demo->add_option("--batch-size", dm.batch_size)->capture_default_str();
    demo->add_option("--train-batches", dm.train.batches_per_epoch, "Batches per epoch")->capture_default_str();
    demo->add_option("--test-batches", dm.test_batches)->capture_default_str();
    demo->add_option("--rng-seed", dm.rng_seed, "Training stream seed")->capture_default_str();
    demo->add_option("--test-rng-seed", dm.test_rng_seed, "Test stream seed")->capture_default_str();
    demo->add_option("--init-seed", dm.train.init_seed, "Weight initialisation seed")->capture_default_str();
    demo->add_option("--hidden", dm.train.hidden)->capture_default_str();
    demo->add_option("--learning-rate", dm.train.learning_rate)->capture_default_str();
    demo->add_option("--csv", dm.csv, "Write the loss curve as CSV");
    demo->add_option("--ledger", dm.ledger, "Save the training stream's ledger");

    try {
        // Expand --config into option tokens placed before the real arguments.
        std::vector<std::string> args(argv + 1, argv + argc);
        std::vector<std::string> expanded;
        CLI::App* sub = nullptr;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (!sub) {
                for (auto* candidate : app.get_subcommands({})) {
                    if (candidate->get_name() == args[i]) sub = candidate;
                }
                expanded.push_back(args[i]);
                if (sub) {
                    for (std::size_t j = i + 1; j < args.size(); ++j) {
                        std::optional<std::string> file;
                        if (args[j] == "--config" && j + 1 < args.size()) file = args[j + 1];
                        if (args[j].rfind("--config=", 0) == 0) file = args[j].substr(9);
                        if (file) {
                            const auto tokens = config_tokens(*sub, *file);
                            expanded.insert(expanded.end(), tokens.begin(), tokens.end());
                        }
                    }
                }
                continue;
            }
            expanded.push_back(args[i]);
        }
        std::reverse(expanded.begin(), expanded.end());
        app.parse(expanded);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }

    try {
        if (*fixtures) return cmd_fixtures(fx);
        if (*generate) return cmd_generate(gen, verbose);
        if (*regen) return cmd_regen(rg);
        if (*estimate) return cmd_estimate(est);
        if (*bench) return cmd_bench(bo);
        if (*demo) return cmd_demo(dm);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
