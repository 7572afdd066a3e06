#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace otcut {

enum class ErrorKind {
  NegativeWeight,
  AsymmetricInput,
  EmptyGraph,
  ParseError,
  IndexOutOfRange,
  InfeasibleMarginals,
  NumericalFailure,
  DimensionMismatch,
  ConfigError,
  LengthMismatch,
  TooLarge,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this exception; kind() lets
// callers (the CLI in particular) map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Non-fatal diagnostics (isolated nodes, empty clusters). The default
// handler writes "warning: <msg>" to stderr.
using WarningHandler = std::function<void(std::string_view)>;

WarningHandler set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace otcut
