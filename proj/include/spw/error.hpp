#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spw {

/// Failure categories surfaced by the library. The CLI maps them onto exit
/// codes (configuration problems -> 2, numeric failures -> 3).
enum class ErrorKind {
  InvalidArgument,
  InvalidApex,
  InvalidDecay,
  BudgetExceeded,
  OutsideDomain,
  OutsideUnion,
  OutsideSector,
  AngularMarginTooSmall,
  EvaluationUnderflow,
  NoBlowupDetected,
  IllConditioned,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// True for kinds that describe a malformed request rather than a numeric
/// failure of a well-posed one.
bool is_config_error(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spw
