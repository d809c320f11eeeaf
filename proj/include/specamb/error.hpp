#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specamb {

/// Failure categories surfaced by the library. The CLI maps these onto
/// stable process exit codes.
enum class Errc {
  NegativeMass,
  MassSumNotOne,
  DuplicateLabel,
  DimensionMismatch,
  UnknownLabel,
  ZeroConditioningEvent,
  ZeroMarginal,
  DegenerateTotalExclusion,
  MisinformativeExceedsEvent,
  InvalidScanConfig,
  ParseError,
  ArityMismatch,
  InvalidArgument,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::MassSumNotOne: return "MassSumNotOne";
    case Errc::DuplicateLabel: return "DuplicateLabel";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::ZeroConditioningEvent: return "ZeroConditioningEvent";
    case Errc::ZeroMarginal: return "ZeroMarginal";
    case Errc::DegenerateTotalExclusion: return "DegenerateTotalExclusion";
    case Errc::MisinformativeExceedsEvent: return "MisinformativeExceedsEvent";
    case Errc::InvalidScanConfig: return "InvalidScanConfig";
    case Errc::ParseError: return "ParseError";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace specamb
