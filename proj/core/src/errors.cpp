#include "heavytop/errors.hpp"

#include <sstream>

namespace heavytop {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroGamma: return "ZeroGamma";
    case ErrorCode::GaugeUnsolvable: return "GaugeUnsolvable";
    case ErrorCode::PresetMismatch: return "PresetMismatch";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::NewtonDiverged: return "NewtonDiverged";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
    case ErrorCode::ConfigParse: return "ConfigParse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string newton_message(int iterations, double residual) {
  std::ostringstream os;
  os << "Newton iteration did not converge after " << iterations
     << " iterations (residual " << residual << ")";
  return os.str();
}

std::string step_message(const Error& cause, std::size_t step_index) {
  std::ostringstream os;
  os << "step " << step_index << ": " << cause.what();
  return os.str();
}

}  // namespace

NewtonDivergedError::NewtonDivergedError(int iterations, double residual)
    : Error(ErrorCode::NewtonDiverged, newton_message(iterations, residual)),
      iterations_(iterations),
      residual_(residual) {}

IntegrationError::IntegrationError(const Error& cause, std::size_t step_index)
    : Error(cause.code(), step_message(cause, step_index)),
      step_index_(step_index) {}

}  // namespace heavytop
