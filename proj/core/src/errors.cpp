#include "ddbin/errors.hpp"

namespace ddbin {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::BadMagic: return "BadMagic";
    case Errc::Truncated: return "Truncated";
    case Errc::TrailingBytes: return "TrailingBytes";
    case Errc::LabelOutOfRange: return "LabelOutOfRange";
    case Errc::NonDivisibleFactor: return "NonDivisibleFactor";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::EmptyClass: return "EmptyClass";
    case Errc::ZeroSmoothingWithEmptyPixel: return "ZeroSmoothingWithEmptyPixel";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DivergedLoss: return "DivergedLoss";
    case Errc::DegenerateWeights: return "DegenerateWeights";
    case Errc::ZeroTopCurrent: return "ZeroTopCurrent";
    case Errc::ConstraintViolation: return "ConstraintViolation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
    case Errc::Format: return "Format";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace ddbin
