#include "expandlab/error.hpp"

namespace expandlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::EmptyDenominator: return "EmptyDenominator";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::UnboundName: return "UnboundName";
    case ErrorKind::MissingInput: return "MissingInput";
    case ErrorKind::PositivityViolation: return "PositivityViolation";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ZeroInMultiplicativeMode: return "ZeroInMultiplicativeMode";
    case ErrorKind::NonPositiveElement: return "NonPositiveElement";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::DegenerateFamily: return "DegenerateFamily";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

namespace {

std::string describe(std::size_t position, const std::vector<std::string>& expected,
                     const std::string& message) {
  std::string out = message + " at position " + std::to_string(position);
  if (!expected.empty()) {
    out += "; expected one of:";
    for (const auto& e : expected) out += " " + e;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t position, std::vector<std::string> expected,
                       const std::string& message)
    : Error(ErrorKind::ParseError, describe(position, expected, message)),
      position_(position),
      expected_(std::move(expected)),
      detail_(message) {}

}  // namespace expandlab
