#pragma once

#include <stdexcept>
#include <string>

namespace floqreset {

enum class ErrorCode {
  // configuration
  NonPositiveAmplitude,
  NegativeRate,
  OddChainLength,
  MissingKey,
  UnknownKey,
  InvalidValue,
  SizeOutOfRange,
  // numerics
  QuadratureNotConverged,
  SteadyStateNotConverged,
  // contract violations on inputs
  DomainError,
  NotADensityMatrix,
  UnsupportedSeparation,
  LengthMismatch,
  EmptyWindow,
};

const char* to_string(ErrorCode code);

/// True for the codes that describe a bad run configuration (CLI exit code 2).
bool is_config_error(ErrorCode code);

/// True for numerical convergence failures (CLI exit code 3).
bool is_convergence_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace floqreset
