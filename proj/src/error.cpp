#include "retarget/error.hpp"

namespace retarget {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::CorruptData: return "CorruptData";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SeamOutOfBounds: return "SeamOutOfBounds";
    case ErrorCode::EnlargementTooLarge: return "EnlargementTooLarge";
    case ErrorCode::EmptyImage: return "EmptyImage";
    case ErrorCode::ExternalToolFailed: return "ExternalToolFailed";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnparsableScore: return "UnparsableScore";
    case ErrorCode::NoForeground: return "NoForeground";
    case ErrorCode::FootprintOutOfBounds: return "FootprintOutOfBounds";
    case ErrorCode::SpriteTooLarge: return "SpriteTooLarge";
    case ErrorCode::InvalidBounds: return "InvalidBounds";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

}  // namespace retarget
