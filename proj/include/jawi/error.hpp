#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jawi {

// Closed set of failure kinds. The names are part of the CLI/HTTP contract.
enum class ErrorCode {
  ParseError,
  ValidationError,
  UnknownLetter,
  UnknownCodepoint,
  EmptyInput,
  UnencodableInput,
  InputTooLong,
  NoPendingSelection,
  NoReadingChosen,
  ReadingIndexOutOfRange,
  InvalidState,
  InvalidTrace,
};

inline constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownLetter: return "UnknownLetter";
    case ErrorCode::UnknownCodepoint: return "UnknownCodepoint";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::UnencodableInput: return "UnencodableInput";
    case ErrorCode::InputTooLong: return "InputTooLong";
    case ErrorCode::NoPendingSelection: return "NoPendingSelection";
    case ErrorCode::NoReadingChosen: return "NoReadingChosen";
    case ErrorCode::ReadingIndexOutOfRange: return "ReadingIndexOutOfRange";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::InvalidTrace: return "InvalidTrace";
  }
  return "Unknown";
}

/// Exception carrying a stable error code plus an optional position
/// (letter index, byte offset or source line, depending on the code).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        position_(position),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
  std::string detail_;
};

}  // namespace jawi
