#include "heavytop/integrators.hpp"

#include "heavytop/maps.hpp"

namespace heavytop {

const char* to_string(Method method) {
  switch (method) {
    case Method::ExplicitMidpoint: return "explicit-midpoint";
    case Method::ImplicitMidpoint: return "implicit-midpoint";
    case Method::RK4: return "rk4";
  }
  return "unknown";
}

const char* to_string(Formulation formulation) {
  switch (formulation) {
    case Formulation::Collective: return "collective";
    case Formulation::Direct: return "direct";
  }
  return "unknown";
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  }
  if (!(newton.tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "Newton tolerance must be positive");
  }
  if (newton.max_iter < 1) {
    throw Error(ErrorCode::InvalidArgument, "Newton max_iter must be at least 1");
  }
}

DirectSystem direct_system(const TopParams& params) {
  DirectSystem sys;
  sys.params = params;
  sys.field = [params](const Vec6& y) {
    return heavytop_field(SE3Dual::from_vector(y), params).to_vector();
  };
  sys.jacobian = [params](const Vec6& y) {
    return heavytop_field_jacobian(SE3Dual::from_vector(y), params);
  };
  return sys;
}

CollectiveSystem collective_system(const TopParams& params) {
  CollectiveSystem sys;
  sys.params = params;
  sys.field = [params](const Vec8& y) {
    return canonical_field(PhasePoint::from_real(y), params).to_real();
  };
  sys.jacobian = [params](const Vec8& y) {
    return canonical_field_jacobian(PhasePoint::from_real(y), params);
  };
  return sys;
}

}  // namespace heavytop
