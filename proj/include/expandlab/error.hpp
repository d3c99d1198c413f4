#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace expandlab {

enum class ErrorKind {
  ZeroDenominator,
  ParseError,
  EmptyDenominator,
  BudgetExceeded,
  ZeroScale,
  UnboundName,
  MissingInput,
  PositivityViolation,
  TooSmall,
  TooLarge,
  ZeroInMultiplicativeMode,
  NonPositiveElement,
  PreconditionViolation,
  DegenerateFamily,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the engine carries one of the ErrorKind tags so
/// the CLI and reports can name it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::vector<std::string> expected,
             const std::string& message);

  std::size_t position() const noexcept { return position_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  /// The message without kind, position or expected tokens.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t position_;
  std::vector<std::string> expected_;
  std::string detail_;
};

}  // namespace expandlab
