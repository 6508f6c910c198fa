#pragma once

#include <stdexcept>
#include <string>

namespace maale {

enum class ErrorCode {
  kInvalidArgument,
  kUnknownGame,
  kInvalidMode,
  kModeNotSet,
  kArity,
  kGameOver,
  kUnsupportedMode,
  kIo,
  kFormat,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace maale
