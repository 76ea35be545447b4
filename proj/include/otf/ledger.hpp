#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "otf/profile.hpp"

namespace otf {

class SeedStore;

struct LedgerRecord {
    std::uint32_t batch_index = 0;
    std::uint32_t profile_index = 0;
    GenParams params;

    friend bool operator==(const LedgerRecord&, const LedgerRecord&) = default;
};

struct LedgerHeader {
    std::uint32_t format_version = 1;
    std::uint64_t rng_seed = 0;
    std::uint32_t batch_size = 0;
    std::uint64_t manifest_digest = 0;

    friend bool operator==(const LedgerHeader&, const LedgerHeader&) = default;
};

// "OTFL", version, rng seed, batch size, digest, record count.
inline constexpr std::size_t kLedgerHeaderBytes = 4 + 4 + 8 + 4 + 8 + 8;
// u32 batch, u32 profile, u64 s, u64 m, f64 lambda1, f64 lambda2.
inline constexpr std::size_t kLedgerRecordBytes = 4 + 4 + 8 + 8 + 8 + 8;
static_assert(kLedgerRecordBytes == 40);

// Append-only log of generation parameters, keyed by (batch, profile) in
// strictly increasing lexicographic order. Buffered in memory; written once.
class Ledger {
public:
    Ledger() = default;
    explicit Ledger(LedgerHeader header) : header_(header) {}

    const LedgerHeader& header() const { return header_; }
    const std::vector<LedgerRecord>& records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }

    // All-or-nothing: throws OrderViolation and leaves the ledger unchanged if
    // any record fails to extend the key order.
    void append(std::span<const LedgerRecord> records);

    // Records of one batch, in profile order; empty when the batch is absent.
    std::span<const LedgerRecord> batch(std::uint32_t batch_index) const;
    std::size_t batch_count() const;

    std::size_t byte_size() const { return kLedgerHeaderBytes + records_.size() * kLedgerRecordBytes; }

    friend bool operator==(const Ledger&, const Ledger&) = default;

private:
    LedgerHeader header_;
    std::vector<LedgerRecord> records_;
};

std::vector<std::uint8_t> encode_ledger(const Ledger& ledger);
Ledger decode_ledger(std::span<const std::uint8_t> bytes);

// One counted write instance regardless of record count.
std::size_t save(const Ledger& ledger, const std::filesystem::path& path);
Ledger load(const std::filesystem::path& path);
// Also checks that the ledger was produced from `store`'s manifest.
Ledger load(const std::filesystem::path& path, const SeedStore& store);

}  // namespace otf
