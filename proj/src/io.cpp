#include "otf/io.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include "otf/error.hpp"

namespace otf::io {
namespace {

struct AtomicCounters {
    std::atomic<std::uint64_t> read_instances{0};
    std::atomic<std::uint64_t> write_instances{0};
    std::atomic<std::uint64_t> bytes_read{0};
    std::atomic<std::uint64_t> bytes_written{0};
};

AtomicCounters& counters() {
    static AtomicCounters instance;
    return instance;
}

}  // namespace

IoCounters operator-(const IoCounters& later, const IoCounters& earlier) {
    return {later.read_instances - earlier.read_instances,
            later.write_instances - earlier.write_instances,
            later.bytes_read - earlier.bytes_read,
            later.bytes_written - earlier.bytes_written};
}

Bytes counted_read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) {
        throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
    }
    const auto size = static_cast<std::size_t>(in.tellg());
    Bytes bytes(size);
    in.seekg(0);
    if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(size))) {
        throw Error(ErrorCode::IoFailure, "short read from " + path.string());
    }
    auto& c = counters();
    c.read_instances.fetch_add(1, std::memory_order_relaxed);
    c.bytes_read.fetch_add(size, std::memory_order_relaxed);
    return bytes;
}

void counted_write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
        throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
    }
    auto& c = counters();
    c.write_instances.fetch_add(1, std::memory_order_relaxed);
    c.bytes_written.fetch_add(bytes.size(), std::memory_order_relaxed);
}

std::string read_metadata(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

IoCounters snapshot() {
    const auto& c = counters();
    return {c.read_instances.load(), c.write_instances.load(), c.bytes_read.load(), c.bytes_written.load()};
}

IoCounters reset() {
    auto& c = counters();
    return {c.read_instances.exchange(0), c.write_instances.exchange(0), c.bytes_read.exchange(0),
            c.bytes_written.exchange(0)};
}

}  // namespace otf::io
