#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delib {

enum class ErrorKind {
  usage,
  parse,
  validation,
  unknown_id,
  dimension_mismatch,
  unsupported,
  solver,
  cap_exceeded,
  stale_transition,
  invariant_breach,
  io,
};

std::string_view to_string(ErrorKind kind);

// Process exit code for the CLI: 1 usage, 2 validation, 3 solver/cap/internal.
int exit_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {},
        std::string clause = {});

  ErrorKind kind() const noexcept { return kind_; }
  // Dotted path of the offending input field, when one applies.
  const std::string& field() const noexcept { return field_; }
  // Machine-readable name of the violated rule ("symmetry", "partition", ...).
  const std::string& clause() const noexcept { return clause_; }

 private:
  ErrorKind kind_;
  std::string field_;
  std::string clause_;
};

}  // namespace delib
