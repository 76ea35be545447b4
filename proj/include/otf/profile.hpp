#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

#include "otf/binary.hpp"

namespace otf {

using Series = Eigen::VectorXd;

enum class Label : std::uint8_t { Commercial = 0, Residential = 1 };

// Label byte in the OTF1 profile format.
inline constexpr std::uint8_t kNoiseLabelCode = 255;

struct SeedProfile {
    std::uint32_t id = 0;
    Series values;
    std::uint32_t resolution_seconds = 1;
    Label label = Label::Commercial;
};

struct NoiseProfile {
    std::uint32_t id = 0;
    Series values;
};

// The tuple that regenerates one synthetic profile: seed index, noise index
// and the two mixing weights.
struct GenParams {
    std::uint32_t s = 0;
    std::uint32_t m = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    friend bool operator==(const GenParams&, const GenParams&) = default;
};

// Test hook for the bounded-memory contract: counts SyntheticProfile objects
// currently alive and the high-water mark since the last reset.
namespace profile_tracking {
std::size_t live();
std::size_t peak();
void reset_peak();

class Token {
public:
    Token();
    Token(const Token&);
    Token(Token&&) noexcept;
    Token& operator=(const Token&) { return *this; }
    Token& operator=(Token&&) noexcept { return *this; }
    ~Token();
};
}  // namespace profile_tracking

struct SyntheticProfile {
    Series values;
    GenParams params;
    Label label = Label::Commercial;

    [[no_unique_address]] profile_tracking::Token token;
};

struct Batch {
    std::uint32_t index = 0;
    std::vector<SyntheticProfile> profiles;
    std::uint64_t rng_state_before = 0;

    std::size_t bytes() const;
};

// One profile as stored in an OTF1 file.
struct ProfileRecord {
    std::uint32_t id = 0;
    std::uint8_t label_code = 0;
    Series values;
};

inline constexpr std::size_t kProfileHeaderBytes = 4 + 4 + 4 + 1;

void encode_profile(binary::Writer& out, std::uint32_t id, std::uint8_t label_code, const Series& values);
ProfileRecord decode_profile(binary::Reader& in);

// A batch file is the concatenation of one OTF1 record per profile, with the
// profile's position in the batch as its id.
std::vector<std::uint8_t> encode_batch(const Batch& batch);
std::vector<ProfileRecord> decode_batch(std::span<const std::uint8_t> bytes);

}  // namespace otf
