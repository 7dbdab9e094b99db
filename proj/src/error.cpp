#include "ktz/error.hpp"

namespace ktz {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Format: return "Format";
    case ErrorCode::StepUnstable: return "StepUnstable";
    case ErrorCode::NonPeriodicGrid: return "NonPeriodicGrid";
    case ErrorCode::SingularLoop: return "SingularLoop";
    case ErrorCode::EmptyZone: return "EmptyZone";
    case ErrorCode::AmbiguousCore: return "AmbiguousCore";
    case ErrorCode::NoPlateau: return "NoPlateau";
    case ErrorCode::SolverFail: return "SolverFail";
    case ErrorCode::NoDepression: return "NoDepression";
  }
  return "Unknown";
}

}  // namespace ktz
