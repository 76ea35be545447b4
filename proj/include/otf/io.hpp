#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

// Counting facade over whole-file disk transfers. One read or write of a
// whole file is one "instance", the unit the IO cost laws are stated in.
namespace otf::io {

using Bytes = std::vector<std::uint8_t>;

struct IoCounters {
    std::uint64_t read_instances = 0;
    std::uint64_t write_instances = 0;
    std::uint64_t bytes_read = 0;
    std::uint64_t bytes_written = 0;

    std::uint64_t instances() const { return read_instances + write_instances; }

    friend bool operator==(const IoCounters&, const IoCounters&) = default;
};

// Componentwise difference, for measuring one phase between two snapshots.
IoCounters operator-(const IoCounters& later, const IoCounters& earlier);

Bytes counted_read_file(const std::filesystem::path& path);
void counted_write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// Configuration and manifest text. Not seed or generated data, so not counted.
std::string read_metadata(const std::filesystem::path& path);

IoCounters snapshot();
// Zeroes the counters and returns the totals they held.
IoCounters reset();

}  // namespace otf::io
