#include "otf/fixtures.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "otf/io.hpp"
#include "otf/profile.hpp"
#include "otf/rng.hpp"

namespace otf::fixtures {
namespace {

double hour_of_day(std::uint32_t sample, std::uint32_t resolution_seconds) {
    const auto seconds = static_cast<std::uint64_t>(sample) * resolution_seconds % 86400;
    return static_cast<double>(seconds) / 3600.0;
}

double bump(double hour, double mu, double sigma) {
    const double z = (hour - mu) / sigma;
    return std::exp(-0.5 * z * z);
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Series seed_shape(Label label, double amplitude, const FixtureSpec& spec) {
    Series values(spec.profile_length);
    for (std::uint32_t i = 0; i < spec.profile_length; ++i) {
        const double h = hour_of_day(i, spec.resolution_seconds);
        double shape;
        if (label == Label::Commercial) {
            shape = logistic((h - 8.0) / 0.5) * logistic((18.0 - h) / 0.5);
        } else {
            shape = 0.9 * bump(h, 7.5, 1.2) + 1.2 * bump(h, 19.0, 1.8);
        }
        values[i] = 0.3 + amplitude * shape;
    }
    return values;
}

void write_profile(const std::filesystem::path& path, std::uint32_t id, std::uint8_t code, const Series& values) {
    std::vector<std::uint8_t> bytes;
    binary::Writer out(bytes);
    encode_profile(out, id, code, values);
    io::counted_write_file(path, bytes);
}

std::string numbered(const char* stem, std::uint32_t i) {
    char name[32];
    std::snprintf(name, sizeof name, "%s_%02u.otf", stem, i);
    return name;
}

}  // namespace

std::filesystem::path write_store(const std::filesystem::path& dir, const FixtureSpec& spec) {
    std::filesystem::create_directories(dir);
    nlohmann::json manifest;
    manifest["resolution_seconds"] = spec.resolution_seconds;
    manifest["seeds"] = nlohmann::json::array();
    manifest["noises"] = nlohmann::json::array();

    for (std::uint32_t i = 0; i < spec.seeds; ++i) {
        const Label label = i % 2 == 0 ? Label::Commercial : Label::Residential;
        const double amplitude = 1.0 + 0.04 * (static_cast<double>(i / 2) - 2.0);
        const auto name = numbered("seed", i);
        write_profile(dir / name, i, static_cast<std::uint8_t>(label), seed_shape(label, amplitude, spec));
        manifest["seeds"].push_back(name);
    }

    SplitMix64 rng(spec.rng_seed);
    for (std::uint32_t i = 0; i < spec.noises; ++i) {
        Series values(spec.profile_length);
        for (auto& v : values) v = spec.noise_amplitude * rng.next_unit();
        const auto name = numbered("noise", i);
        write_profile(dir / name, i, kNoiseLabelCode, values);
        manifest["noises"].push_back(name);
    }

    const auto manifest_path = dir / "manifest.json";
    const std::string text = manifest.dump(2) + "\n";
    io::counted_write_file(manifest_path,
                           std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    return manifest_path;
}

}  // namespace otf::fixtures
