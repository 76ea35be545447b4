#include "otf/seed_store.hpp"

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "otf/io.hpp"

namespace otf {
namespace {

void require_finite(const Series& values, const std::string& what) {
    if (!values.allFinite()) {
        throw Error(ErrorCode::NonFiniteSample, what + " contains a non-finite sample");
    }
}

}  // namespace

SeedStore::SeedStore(std::vector<SeedProfile> seeds, std::vector<NoiseProfile> noises, std::uint64_t manifest_digest)
    : seeds_(std::move(seeds)), noises_(std::move(noises)), manifest_digest_(manifest_digest) {
    if (seeds_.empty() || noises_.empty()) {
        throw Error(ErrorCode::EmptyStore, "store needs at least one seed and one noise profile (have " +
                                               std::to_string(seeds_.size()) + " seeds, " +
                                               std::to_string(noises_.size()) + " noises)");
    }
    profile_length_ = static_cast<std::size_t>(seeds_.front().values.size());
    if (profile_length_ == 0) {
        throw Error(ErrorCode::EmptyStore, "seed profiles are empty");
    }
    std::set<std::uint32_t> ids;
    for (const auto& seed : seeds_) {
        const std::string name = "seed " + std::to_string(seed.id);
        if (static_cast<std::size_t>(seed.values.size()) != profile_length_) {
            throw Error(ErrorCode::LengthMismatch, name + " has length " + std::to_string(seed.values.size()) +
                                                       ", expected " + std::to_string(profile_length_));
        }
        if (seed.resolution_seconds < 1) {
            throw Error(ErrorCode::InvalidInput, name + " has resolution below 1 s");
        }
        require_finite(seed.values, name);
        if (!ids.insert(seed.id).second) {
            throw Error(ErrorCode::InvalidInput, "duplicate seed id " + std::to_string(seed.id));
        }
    }
    for (const auto& noise : noises_) {
        const std::string name = "noise " + std::to_string(noise.id);
        if (static_cast<std::size_t>(noise.values.size()) != profile_length_) {
            throw Error(ErrorCode::LengthMismatch, name + " has length " + std::to_string(noise.values.size()) +
                                                       ", expected " + std::to_string(profile_length_));
        }
        require_finite(noise.values, name);
    }
}

Manifest Manifest::parse(std::string_view json_text, const std::filesystem::path& base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadFormat, std::string("manifest is not valid JSON: ") + e.what());
    }
    Manifest manifest;
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "resolution_seconds") {
                manifest.resolution_seconds = value.get<std::uint32_t>();
            } else if (key == "seeds" || key == "noises") {
                auto& paths = key == "seeds" ? manifest.seeds : manifest.noises;
                for (const auto& entry : value) {
                    std::filesystem::path p = entry.get<std::string>();
                    paths.push_back(p.is_relative() ? base / p : p);
                }
            } else {
                throw Error(ErrorCode::BadFormat, "unknown manifest key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::BadFormat, std::string("manifest field has the wrong type: ") + e.what());
    }
    if (manifest.resolution_seconds < 1) {
        throw Error(ErrorCode::BadFormat, "resolution_seconds must be >= 1");
    }
    return manifest;
}

std::uint64_t manifest_digest(const std::filesystem::path& manifest_path) {
    return binary::fnv1a(io::read_metadata(manifest_path));
}

SeedStore load_seed_store(const std::filesystem::path& manifest_path) {
    const std::string text = io::read_metadata(manifest_path);
    const Manifest manifest = Manifest::parse(text, manifest_path.parent_path());

    auto read_one = [](const std::filesystem::path& path) {
        if (!std::filesystem::exists(path)) {
            throw Error(ErrorCode::MissingFile, path.string());
        }
        const auto bytes = io::counted_read_file(path);
        binary::Reader in(bytes);
        ProfileRecord record = decode_profile(in);
        if (in.remaining() != 0) {
            throw Error(ErrorCode::BadFormat, path.string() + " has trailing bytes");
        }
        return record;
    };

    std::vector<SeedProfile> seeds;
    for (const auto& path : manifest.seeds) {
        ProfileRecord record = read_one(path);
        if (record.label_code > 1) {
            throw Error(ErrorCode::BadFormat, path.string() + " is not a seed profile (label code " +
                                                  std::to_string(record.label_code) + ")");
        }
        seeds.push_back({record.id, std::move(record.values), manifest.resolution_seconds,
                         static_cast<Label>(record.label_code)});
    }
    std::vector<NoiseProfile> noises;
    for (const auto& path : manifest.noises) {
        ProfileRecord record = read_one(path);
        if (record.label_code != kNoiseLabelCode) {
            throw Error(ErrorCode::BadFormat, path.string() + " is not a noise profile");
        }
        noises.push_back({record.id, std::move(record.values)});
    }
    return SeedStore(std::move(seeds), std::move(noises), binary::fnv1a(text));
}

}  // namespace otf
