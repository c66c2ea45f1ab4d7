#pragma once

// Fixed-step one-step methods and the trajectory driver. The steppers are
// generic over the state dimension so the same code integrates the
// 8-dimensional collective system and the 6-dimensional heavy top equations.

#include <cmath>
#include <cstddef>
#include <algorithm>
#include <functional>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "heavytop/algebra.hpp"
#include "heavytop/errors.hpp"
#include "heavytop/hamiltonians.hpp"

namespace heavytop {

template <int N>
using State = Eigen::Matrix<double, N, 1>;
template <int N>
using FieldJacobian = Eigen::Matrix<double, N, N>;

enum class Method { ExplicitMidpoint, ImplicitMidpoint, RK4 };
enum class Formulation { Collective, Direct };

const char* to_string(Method method);
const char* to_string(Formulation formulation);

struct NewtonOptions {
  enum class Jacobian { Analytic, ForwardDifference };

  double tol = 1e-13;  ///< bound on the step residual infinity-norm
  int max_iter = 50;
  Jacobian jacobian = Jacobian::Analytic;
};

struct StepperConfig {
  Method method = Method::ImplicitMidpoint;
  double dt = 1.0 / 50.0;
  NewtonOptions newton;

  /// Throws Error(InvalidArgument) on dt <= 0, tol <= 0 or max_iter < 1.
  void validate() const;
};

/// A vector field with its Jacobian, bound to the top parameters it models.
template <int N>
struct TopSystem {
  static constexpr Formulation formulation =
      N == 8 ? Formulation::Collective : Formulation::Direct;

  std::function<State<N>(const State<N>&)> field;
  std::function<FieldJacobian<N>(const State<N>&)> jacobian;
  TopParams params;
};

using CollectiveSystem = TopSystem<8>;
using DirectSystem = TopSystem<6>;

/// Heavy top equations on (Pi, Gamma).
DirectSystem direct_system(const TopParams& params);
/// Canonical system q' = dH/dp, p' = -dH/dq with H = h o M.
CollectiveSystem collective_system(const TopParams& params);

template <int N>
struct Trajectory {
  static constexpr Formulation formulation = TopSystem<N>::formulation;

  std::vector<double> times;
  std::vector<State<N>> states;
  TopParams params;
};

using CollectiveTrajectory = Trajectory<8>;
using DirectTrajectory = Trajectory<6>;

namespace detail {

template <int N>
void require_finite(const State<N>& y) {
  if (!y.allFinite()) {
    throw Error(ErrorCode::NonFiniteState, "state has non-finite components");
  }
}

template <int N, typename Field>
FieldJacobian<N> forward_difference_jacobian(const Field& field,
                                             const State<N>& y) {
  const State<N> f0 = field(y);
  FieldJacobian<N> jac;
  for (int k = 0; k < N; ++k) {
    const double step = 1e-7 * std::max(1.0, std::abs(y[k]));
    State<N> yk = y;
    yk[k] += step;
    jac.col(k) = (field(yk) - f0) / (yk[k] - y[k]);
  }
  return jac;
}

}  // namespace detail

/// y + dt f(y + dt/2 f(y)).
template <int N, typename Field>
State<N> explicit_midpoint_step(const Field& field, const State<N>& y,
                                double dt) {
  detail::require_finite<N>(y);
  const State<N> half = y + 0.5 * dt * field(y);
  State<N> next = y + dt * field(half);
  detail::require_finite<N>(next);
  return next;
}

template <int N, typename Field>
State<N> rk4_step(const Field& field, const State<N>& y, double dt) {
  detail::require_finite<N>(y);
  const State<N> k1 = field(y);
  const State<N> k2 = field(State<N>(y + 0.5 * dt * k1));
  const State<N> k3 = field(State<N>(y + 0.5 * dt * k2));
  const State<N> k4 = field(State<N>(y + dt * k3));
  State<N> next = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  detail::require_finite<N>(next);
  return next;
}

template <int N>
struct MidpointSolve {
  State<N> state;
  int iterations = 0;
  double residual = 0.0;  ///< |y_next - y - dt f((y + y_next)/2)|_inf
};

/// Implicit midpoint rule y_next = y + dt f((y + y_next)/2).
///
/// Newton iteration on the midpoint m = (y + y_next)/2, i.e. on
/// G(m) = m - y - dt/2 f(m), started from the explicit-midpoint predictor.
/// Converged once the step residual (= 2 |G(m)|_inf) is at most newton.tol.
template <int N, typename Field, typename Jac>
MidpointSolve<N> implicit_midpoint_step(const Field& field, const Jac& jacobian,
                                        const State<N>& y, double dt,
                                        const NewtonOptions& newton = {}) {
  detail::require_finite<N>(y);
  MidpointSolve<N> out;
  if (dt == 0.0) {
    out.state = y;
    return out;
  }

  const State<N> f_y = field(y);
  State<N> mid = y + 0.5 * dt * field(State<N>(y + 0.5 * dt * f_y));
  const FieldJacobian<N> identity = FieldJacobian<N>::Identity();

  double residual = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter <= newton.max_iter; ++iter) {
    const State<N> f_mid = field(mid);
    const State<N> g = mid - y - 0.5 * dt * f_mid;
    residual = 2.0 * g.template lpNorm<Eigen::Infinity>();
    if (!std::isfinite(residual)) {
      throw Error(ErrorCode::NonFiniteState,
                  "implicit midpoint residual became non-finite");
    }
    if (residual <= newton.tol) {
      out.state = 2.0 * mid - y;
      out.iterations = iter;
      out.residual = residual;
      detail::require_finite<N>(out.state);
      return out;
    }
    if (iter == newton.max_iter) break;

    const FieldJacobian<N> df =
        newton.jacobian == NewtonOptions::Jacobian::Analytic
            ? FieldJacobian<N>(jacobian(mid))
            : detail::forward_difference_jacobian<N>(field, mid);
    const FieldJacobian<N> dg = identity - 0.5 * dt * df;
    mid -= dg.partialPivLu().solve(g);
  }
  throw NewtonDivergedError(newton.max_iter, residual);
}

/// Advances a system by one step of the configured method.
template <int N>
State<N> step(const TopSystem<N>& system, const State<N>& y,
              const StepperConfig& cfg) {
  switch (cfg.method) {
    case Method::ExplicitMidpoint:
      return explicit_midpoint_step<N>(system.field, y, cfg.dt);
    case Method::RK4:
      return rk4_step<N>(system.field, y, cfg.dt);
    case Method::ImplicitMidpoint:
      return implicit_midpoint_step<N>(system.field, system.jacobian, y,
                                       cfg.dt, cfg.newton)
          .state;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

/// Integrates round(t_final / dt) uniform steps from y0 at t = 0. Sample k is
/// at t = k dt. Stepper failures are rethrown as IntegrationError carrying
/// the failing step index.
template <int N>
Trajectory<N> integrate(const TopSystem<N>& system, const State<N>& y0,
                        double t_final, const StepperConfig& cfg) {
  cfg.validate();
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCode::InvalidArgument, "t_final must be positive");
  }
  const auto steps = static_cast<std::size_t>(std::llround(t_final / cfg.dt));

  Trajectory<N> traj;
  traj.params = system.params;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(y0);

  State<N> y = y0;
  for (std::size_t k = 0; k < steps; ++k) {
    try {
      y = step<N>(system, y, cfg);
    } catch (const Error& e) {
      throw IntegrationError(e, k);
    }
    traj.times.push_back(static_cast<double>(k + 1) * cfg.dt);
    traj.states.push_back(y);
  }
  return traj;
}

}  // namespace heavytop
