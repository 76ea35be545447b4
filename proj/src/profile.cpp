#include "otf/profile.hpp"

#include <atomic>

namespace otf {
namespace profile_tracking {
namespace {
std::atomic<std::size_t> g_live{0};
std::atomic<std::size_t> g_peak{0};

void increment() {
    const std::size_t now = g_live.fetch_add(1) + 1;
    std::size_t seen = g_peak.load();
    while (now > seen && !g_peak.compare_exchange_weak(seen, now)) {
    }
}
}  // namespace

std::size_t live() { return g_live.load(); }
std::size_t peak() { return g_peak.load(); }
void reset_peak() { g_peak.store(g_live.load()); }

Token::Token() { increment(); }
Token::Token(const Token&) { increment(); }
Token::Token(Token&&) noexcept { increment(); }
Token::~Token() { g_live.fetch_sub(1); }
}  // namespace profile_tracking

std::size_t Batch::bytes() const {
    std::size_t total = 0;
    for (const auto& p : profiles) total += static_cast<std::size_t>(p.values.size()) * sizeof(double);
    return total;
}

void encode_profile(binary::Writer& out, std::uint32_t id, std::uint8_t label_code, const Series& values) {
    out.magic("OTF1");
    out.put(id);
    out.put(static_cast<std::uint32_t>(values.size()));
    out.put(label_code);
    out.put_doubles(std::span(values.data(), static_cast<std::size_t>(values.size())));
}

ProfileRecord decode_profile(binary::Reader& in) {
    if (!in.magic("OTF1")) {
        throw Error(ErrorCode::BadMagic, "profile record does not start with OTF1");
    }
    ProfileRecord record;
    record.id = in.get<std::uint32_t>();
    const auto length = in.get<std::uint32_t>();
    record.label_code = in.get<std::uint8_t>();
    record.values.resize(length);
    in.get_doubles(std::span(record.values.data(), length));
    return record;
}

std::vector<std::uint8_t> encode_batch(const Batch& batch) {
    std::vector<std::uint8_t> bytes;
    std::size_t size = 0;
    for (const auto& p : batch.profiles) size += kProfileHeaderBytes + sizeof(double) * p.values.size();
    bytes.reserve(size);
    binary::Writer out(bytes);
    for (std::size_t i = 0; i < batch.profiles.size(); ++i) {
        const auto& p = batch.profiles[i];
        encode_profile(out, static_cast<std::uint32_t>(i), static_cast<std::uint8_t>(p.label), p.values);
    }
    return bytes;
}

std::vector<ProfileRecord> decode_batch(std::span<const std::uint8_t> bytes) {
    std::vector<ProfileRecord> records;
    binary::Reader in(bytes);
    while (in.remaining() > 0) records.push_back(decode_profile(in));
    return records;
}

}  // namespace otf
