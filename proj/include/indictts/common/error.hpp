#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace indictts {

// Every failure the library reports carries one of these codes. The CLI maps
// each code to a fixed exit status (see exit_code()); the HTTP service maps
// them to status codes. Keep the numeric values stable.
enum class ErrorCode {
  InvalidArgument = 1,
  InvalidUtf8,
  IoError,
  // script-frontend
  MixedScript,
  NoIndicContent,
  ScriptMismatch,
  UnmappableCodepoint,
  UnrenderableToken,
  BadTable,
  // corpus-pool
  MissingAudio,
  UnreadableHeader,
  TranscriptMismatch,
  EmptyAfterCleaning,
  CrossFamilyPooling,
  DuplicateId,
  InsufficientData,
  // feature-lab
  TooShort,
  RateMismatch,
  OrderTooHigh,
  OrderMismatch,
  EmptyTrack,
  InvalidFrequency,
  BadMatrixFile,
  // speaker-space
  BadDimension,
  DuplicateUtterance,
  CorruptArchive,
  UnknownSpeaker,
  MissingEmbedding,
  ZeroVector,
  // attention-core
  IndexOutOfRange,
  DimensionMismatch,
  // eval-service
  MissingStimulus,
  InvalidConfig,
  UnknownSession,
  UnknownStimulus,
  DuplicateRating,
  OutOfScale,
  NoRatings,
  WrongKind,
  NoPairs,
  // cli
  UnknownSubcommand,
};

std::string_view to_string(ErrorCode code);

// Process exit status for a code: 10 + the enum value, so 0/1/2 stay free for
// success, unexpected failures and usage errors.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace indictts
