#include "otf/ledger.hpp"

#include <algorithm>
#include <tuple>

#include "otf/io.hpp"
#include "otf/seed_store.hpp"

namespace otf {
namespace {

auto key(const LedgerRecord& r) { return std::tuple(r.batch_index, r.profile_index); }

std::uint32_t narrow_index(std::uint64_t v) {
    if (v > UINT32_MAX) throw Error(ErrorCode::BadFormat, "profile index " + std::to_string(v) + " out of range");
    return static_cast<std::uint32_t>(v);
}

}  // namespace

void Ledger::append(std::span<const LedgerRecord> records) {
    const LedgerRecord* previous = records_.empty() ? nullptr : &records_.back();
    for (const auto& r : records) {
        if (previous && !(key(*previous) < key(r))) {
            throw Error(ErrorCode::OrderViolation,
                        "record (" + std::to_string(r.batch_index) + ", " + std::to_string(r.profile_index) +
                            ") does not follow (" + std::to_string(previous->batch_index) + ", " +
                            std::to_string(previous->profile_index) + ")");
        }
        previous = &r;
    }
    records_.insert(records_.end(), records.begin(), records.end());
}

std::span<const LedgerRecord> Ledger::batch(std::uint32_t batch_index) const {
    const auto first = std::partition_point(records_.begin(), records_.end(),
                                            [&](const LedgerRecord& r) { return r.batch_index < batch_index; });
    const auto last = std::partition_point(first, records_.end(),
                                           [&](const LedgerRecord& r) { return r.batch_index == batch_index; });
    return {first, last};
}

std::size_t Ledger::batch_count() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        if (i == 0 || records_[i].batch_index != records_[i - 1].batch_index) ++count;
    }
    return count;
}

std::vector<std::uint8_t> encode_ledger(const Ledger& ledger) {
    std::vector<std::uint8_t> bytes;
    bytes.reserve(ledger.byte_size());
    binary::Writer out(bytes);
    const auto& h = ledger.header();
    out.magic("OTFL");
    out.put(h.format_version);
    out.put(h.rng_seed);
    out.put(h.batch_size);
    out.put(h.manifest_digest);
    out.put(static_cast<std::uint64_t>(ledger.size()));
    for (const auto& r : ledger.records()) {
        out.put(r.batch_index);
        out.put(r.profile_index);
        out.put(static_cast<std::uint64_t>(r.params.s));
        out.put(static_cast<std::uint64_t>(r.params.m));
        out.put(r.params.lambda1);
        out.put(r.params.lambda2);
    }
    return bytes;
}

Ledger decode_ledger(std::span<const std::uint8_t> bytes) {
    binary::Reader in(bytes);
    if (bytes.size() < 4 || !in.magic("OTFL")) {
        throw Error(bytes.size() < 4 ? ErrorCode::Truncated : ErrorCode::BadMagic, "not a ledger file");
    }
    LedgerHeader h;
    h.format_version = in.get<std::uint32_t>();
    if (h.format_version != 1) {
        throw Error(ErrorCode::VersionUnsupported, "ledger version " + std::to_string(h.format_version));
    }
    h.rng_seed = in.get<std::uint64_t>();
    h.batch_size = in.get<std::uint32_t>();
    h.manifest_digest = in.get<std::uint64_t>();
    const auto count = in.get<std::uint64_t>();
    if (in.remaining() / kLedgerRecordBytes < count) {
        throw Error(ErrorCode::Truncated, "ledger declares " + std::to_string(count) + " records but holds " +
                                              std::to_string(in.remaining() / kLedgerRecordBytes));
    }
    std::vector<LedgerRecord> records(count);
    for (auto& r : records) {
        r.batch_index = in.get<std::uint32_t>();
        r.profile_index = in.get<std::uint32_t>();
        r.params.s = narrow_index(in.get<std::uint64_t>());
        r.params.m = narrow_index(in.get<std::uint64_t>());
        r.params.lambda1 = in.get<double>();
        r.params.lambda2 = in.get<double>();
    }
    if (in.remaining() != 0) {
        throw Error(ErrorCode::BadFormat, "trailing bytes after ledger records");
    }
    Ledger ledger(h);
    ledger.append(records);
    return ledger;
}

std::size_t save(const Ledger& ledger, const std::filesystem::path& path) {
    const auto bytes = encode_ledger(ledger);
    io::counted_write_file(path, bytes);
    return bytes.size();
}

Ledger load(const std::filesystem::path& path) {
    return decode_ledger(io::counted_read_file(path));
}

Ledger load(const std::filesystem::path& path, const SeedStore& store) {
    Ledger ledger = load(path);
    if (ledger.header().manifest_digest != store.manifest_digest()) {
        throw Error(ErrorCode::DigestMismatch, path.string() + " was produced from a different seed store");
    }
    return ledger;
}

}  // namespace otf
