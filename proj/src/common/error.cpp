#include "indictts/common/error.hpp"

namespace indictts {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidUtf8: return "InvalidUtf8";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MixedScript: return "MixedScript";
    case ErrorCode::NoIndicContent: return "NoIndicContent";
    case ErrorCode::ScriptMismatch: return "ScriptMismatch";
    case ErrorCode::UnmappableCodepoint: return "UnmappableCodepoint";
    case ErrorCode::UnrenderableToken: return "UnrenderableToken";
    case ErrorCode::BadTable: return "BadTable";
    case ErrorCode::MissingAudio: return "MissingAudio";
    case ErrorCode::UnreadableHeader: return "UnreadableHeader";
    case ErrorCode::TranscriptMismatch: return "TranscriptMismatch";
    case ErrorCode::EmptyAfterCleaning: return "EmptyAfterCleaning";
    case ErrorCode::CrossFamilyPooling: return "CrossFamilyPooling";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::RateMismatch: return "RateMismatch";
    case ErrorCode::OrderTooHigh: return "OrderTooHigh";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::EmptyTrack: return "EmptyTrack";
    case ErrorCode::InvalidFrequency: return "InvalidFrequency";
    case ErrorCode::BadMatrixFile: return "BadMatrixFile";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DuplicateUtterance: return "DuplicateUtterance";
    case ErrorCode::CorruptArchive: return "CorruptArchive";
    case ErrorCode::UnknownSpeaker: return "UnknownSpeaker";
    case ErrorCode::MissingEmbedding: return "MissingEmbedding";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingStimulus: return "MissingStimulus";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::UnknownStimulus: return "UnknownStimulus";
    case ErrorCode::DuplicateRating: return "DuplicateRating";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::NoRatings: return "NoRatings";
    case ErrorCode::WrongKind: return "WrongKind";
    case ErrorCode::NoPairs: return "NoPairs";
    case ErrorCode::UnknownSubcommand: return "UnknownSubcommand";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) { return 10 + static_cast<int>(code); }

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace indictts
