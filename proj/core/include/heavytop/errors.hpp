#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heavytop {

enum class ErrorCode {
  InvalidArgument,
  ZeroGamma,
  GaugeUnsolvable,
  PresetMismatch,
  NonFiniteState,
  NewtonDiverged,
  SeriesTooShort,
  InsufficientData,
  NonPositiveValue,
  UnknownExperiment,
  ConfigParse,
  Io,
};

const char* to_string(ErrorCode code);

/// Base for every error raised by the library. The code lets callers (and the
/// CLI) branch on the failure kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NewtonDivergedError : public Error {
 public:
  NewtonDivergedError(int iterations, double residual);

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// A stepper failure annotated with the index of the step that failed
/// (step k advances t_k to t_{k+1}). code() is the underlying failure.
class IntegrationError : public Error {
 public:
  IntegrationError(const Error& cause, std::size_t step_index);

  std::size_t step_index() const noexcept { return step_index_; }

 private:
  std::size_t step_index_;
};

}  // namespace heavytop
