#include "spw/error.hpp"

namespace spw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidApex: return "InvalidApex";
    case ErrorKind::InvalidDecay: return "InvalidDecay";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::OutsideUnion: return "OutsideUnion";
    case ErrorKind::OutsideSector: return "OutsideSector";
    case ErrorKind::AngularMarginTooSmall: return "AngularMarginTooSmall";
    case ErrorKind::EvaluationUnderflow: return "EvaluationUnderflow";
    case ErrorKind::NoBlowupDetected: return "NoBlowupDetected";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_config_error(ErrorKind kind) {
  return kind == ErrorKind::InvalidArgument || kind == ErrorKind::InvalidApex ||
         kind == ErrorKind::ConfigError;
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace spw
