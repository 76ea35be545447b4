#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

#include "otf/error.hpp"

// Little-endian packing for the on-disk formats.
namespace otf::binary {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
T byteswap_if_big(T value) {
    if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
        std::uint8_t raw[sizeof(T)];
        std::memcpy(raw, &value, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
            std::swap(raw[i], raw[sizeof(T) - 1 - i]);
        }
        std::memcpy(&value, raw, sizeof(T));
    }
    return value;
}

class Writer {
public:
    explicit Writer(std::vector<std::uint8_t>& out) : out_(out) {}

    void magic(std::string_view tag) { out_.insert(out_.end(), tag.begin(), tag.end()); }

    template <typename T>
        requires std::is_arithmetic_v<T>
    void put(T value) {
        value = byteswap_if_big(value);
        const auto* raw = reinterpret_cast<const std::uint8_t*>(&value);
        out_.insert(out_.end(), raw, raw + sizeof(T));
    }

    void put_doubles(std::span<const double> values) {
        if constexpr (std::endian::native == std::endian::little) {
            const auto* raw = reinterpret_cast<const std::uint8_t*>(values.data());
            out_.insert(out_.end(), raw, raw + values.size_bytes());
        } else {
            for (double v : values) put(v);
        }
    }

private:
    std::vector<std::uint8_t>& out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    bool magic(std::string_view tag) {
        require(tag.size());
        const bool ok = std::memcmp(in_.data() + pos_, tag.data(), tag.size()) == 0;
        pos_ += tag.size();
        return ok;
    }

    template <typename T>
        requires std::is_arithmetic_v<T>
    T get() {
        require(sizeof(T));
        T value;
        std::memcpy(&value, in_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return byteswap_if_big(value);
    }

    void get_doubles(std::span<double> out) {
        require(out.size_bytes());
        if constexpr (std::endian::native == std::endian::little) {
            std::memcpy(out.data(), in_.data() + pos_, out.size_bytes());
            pos_ += out.size_bytes();
        } else {
            for (double& v : out) v = get<double>();
        }
    }

    std::size_t remaining() const { return in_.size() - pos_; }
    std::size_t position() const { return pos_; }

private:
    void require(std::size_t n) const {
        if (in_.size() - pos_ < n) {
            throw Error(ErrorCode::Truncated, "need " + std::to_string(n) + " bytes at offset " +
                                                  std::to_string(pos_) + ", have " +
                                                  std::to_string(in_.size() - pos_));
        }
    }

    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

// 64-bit FNV-1a.
constexpr std::uint64_t fnv1a_offset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t fnv1a_prime = 0x100000001b3ULL;

inline std::uint64_t fnv1a(std::span<const std::uint8_t> bytes, std::uint64_t hash = fnv1a_offset) {
    for (std::uint8_t b : bytes) {
        hash ^= b;
        hash *= fnv1a_prime;
    }
    return hash;
}

inline std::uint64_t fnv1a(std::string_view text, std::uint64_t hash = fnv1a_offset) {
    return fnv1a(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()), hash);
}

}  // namespace otf::binary
