#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "heavytop/algebra.hpp"
#include "heavytop/hamiltonians.hpp"
#include "heavytop/integrators.hpp"

namespace heavytop {

/// Invariant values sampled along a trajectory, one named column each.
///
/// Columns are h, f1, f2, f3, K for every trajectory; collective trajectories
/// add F1, F2, F3, J1, J2, J3.
struct InvariantSeries {
  struct Column {
    std::string name;
    std::vector<double> values;
  };

  std::vector<double> times;
  std::vector<Column> columns;
  TopParams params;

  bool has(std::string_view name) const;
  /// Throws Error(InvalidArgument) for an unknown name.
  const std::vector<double>& operator[](std::string_view name) const;
  std::size_t size() const { return times.size(); }
};

InvariantSeries invariant_series(const CollectiveTrajectory& traj);
InvariantSeries invariant_series(const DirectTrajectory& traj);

/// Heavy top states along a trajectory (collective states mapped through M).
std::vector<SE3Dual> se3_states(const CollectiveTrajectory& traj);
std::vector<SE3Dual> se3_states(const DirectTrajectory& traj);

struct Drift {
  std::string name;
  double initial = 0.0;
  double max_abs_dev = 0.0;  ///< max_t |v(t) - v(0)|
  double lsq_slope = 0.0;    ///< least-squares slope of v against t
  double final_dev = 0.0;    ///< v(T) - v(0)
};

struct DriftReport {
  std::vector<Drift> entries;

  /// Throws Error(InvalidArgument) for an unknown name.
  const Drift& operator[](std::string_view name) const;
};

/// Throws Error(SeriesTooShort) for fewer than two samples.
DriftReport drift_report(const InvariantSeries& series);

/// Ordinary least-squares slope of y against x.
double lsq_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of log(err) against log(dt). Needs at least three
/// pairs (Error(InsufficientData)) with positive entries
/// (Error(NonPositiveValue)).
double convergence_order(const std::vector<std::pair<double, double>>& dt_err);

using BracketResiduals = Eigen::Matrix<double, 6, 6>;

/// Entry (a, b) is |{x_a o M, x_b o M}(z) - {x_a, x_b}(M(z))| over the
/// coordinate functions x = (Pi1, Pi2, Pi3, Gamma1, Gamma2, Gamma3), with the
/// canonical bracket on the left and the heavy top bracket on the right.
BracketResiduals bracket_check(const PhasePoint& z);

/// Heavy top bracket of two functions given by their (Pi, Gamma) gradients.
double heavytop_bracket(const SE3Dual& s, const Vec6& grad_f, const Vec6& grad_g);

}  // namespace heavytop
