#pragma once

#include <stdexcept>
#include <string>

namespace ktz {

enum class ErrorCode {
  InvalidArgument,
  Config,
  Io,
  Format,
  StepUnstable,
  NonPeriodicGrid,
  SingularLoop,
  EmptyZone,
  AmbiguousCore,
  NoPlateau,
  SolverFail,
  NoDepression,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// C API can map it onto a stable status value.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ktz
