#include "delib/errors.hpp"

namespace delib {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::unknown_id: return "unknown_id";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::solver: return "solver";
    case ErrorKind::cap_exceeded: return "cap_exceeded";
    case ErrorKind::stale_transition: return "stale_transition";
    case ErrorKind::invariant_breach: return "invariant_breach";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::io:
      return 1;
    case ErrorKind::parse:
    case ErrorKind::validation:
    case ErrorKind::unknown_id:
    case ErrorKind::dimension_mismatch:
    case ErrorKind::unsupported:
      return 2;
    case ErrorKind::solver:
    case ErrorKind::cap_exceeded:
    case ErrorKind::stale_transition:
    case ErrorKind::invariant_breach:
      return 3;
  }
  return 3;
}

namespace {
std::string compose(const std::string& message, const std::string& field) {
  return field.empty() ? message : field + ": " + message;
}
}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string field,
             std::string clause)
    : std::runtime_error(compose(message, field)),
      kind_(kind),
      field_(std::move(field)),
      clause_(std::move(clause)) {}

}  // namespace delib
