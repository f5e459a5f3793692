#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclordf {

enum class ErrorKind {
  InvalidModel,
  InvalidArgument,
  DegenerateCovariance,
  SingularCovariance,
  NonPositiveEigenvalue,
  NonPositiveDistortion,
  RateOutOfRange,
  BetaViolation,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so the CLI can map it
/// to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Same error with `context` prepended, e.g. the sweep cell that failed.
  Error annotated(const std::string& context) const {
    Error e(*this);
    e.context_ = context + (context_.empty() ? "" : ", " + context_);
    return e;
  }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorKind kind_;
  std::string context_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateCovariance: return "DegenerateCovariance";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorKind::NonPositiveDistortion: return "NonPositiveDistortion";
    case ErrorKind::RateOutOfRange: return "RateOutOfRange";
    case ErrorKind::BetaViolation: return "BetaViolation";
    case ErrorKind::Config: return "Config";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace cyclordf
