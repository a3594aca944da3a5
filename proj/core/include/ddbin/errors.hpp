#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ddbin {

/// Typed failure categories raised by the library. The CLI prints the name
/// verbatim, so renaming an enumerator is a breaking change.
enum class Errc {
  BadMagic,
  Truncated,
  TrailingBytes,
  LabelOutOfRange,
  NonDivisibleFactor,
  OutOfRange,
  EmptyClass,
  ZeroSmoothingWithEmptyPixel,
  DimensionMismatch,
  DivergedLoss,
  DegenerateWeights,
  ZeroTopCurrent,
  ConstraintViolation,
  InvalidArgument,
  Io,
  Format,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace ddbin
