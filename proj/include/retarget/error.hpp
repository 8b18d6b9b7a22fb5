#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace retarget {

enum class ErrorCode {
  FileNotFound,
  UnsupportedFormat,
  CorruptData,
  IoError,
  InvalidArgument,
  SeamOutOfBounds,
  EnlargementTooLarge,
  EmptyImage,
  ExternalToolFailed,
  DimensionMismatch,
  UnparsableScore,
  NoForeground,
  FootprintOutOfBounds,
  SpriteTooLarge,
  InvalidBounds,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stage and exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// An Error annotated with the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.code(), stage + ": " + cause.what()), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Invokes fn(), rethrowing any Error as a StageError tagged with `stage`.
template <typename Fn>
decltype(auto) in_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

}  // namespace retarget
