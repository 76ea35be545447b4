#include "otf/error.hpp"

namespace otf {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonFiniteSample: return "NonFiniteSample";
    case ErrorCode::EmptyStore: return "EmptyStore";
    case ErrorCode::BadFormat: return "BadFormat";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ReplayExhausted: return "ReplayExhausted";
    case ErrorCode::UnknownBatch: return "UnknownBatch";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::VersionUnsupported: return "VersionUnsupported";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::DigestMismatch: return "DigestMismatch";
    case ErrorCode::NonIntegralBatching: return "NonIntegralBatching";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonDivisibleLength: return "NonDivisibleLength";
    }
    return "Unknown";
}

}  // namespace otf
