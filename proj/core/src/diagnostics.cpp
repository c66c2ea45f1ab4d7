#include "heavytop/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heavytop/errors.hpp"
#include "heavytop/maps.hpp"

namespace heavytop {

namespace {

const char* const kSE3Names[] = {"h", "f1", "f2", "f3", "K"};
const char* const kPhaseNames[] = {"F1", "F2", "F3", "J1", "J2", "J3"};

void append_se3(InvariantSeries& series, const SE3Dual& s) {
  const SE3Invariants inv = invariants_se3(s, series.params);
  const double values[] = {inv.h, inv.f1, inv.f2, inv.f3, inv.K};
  for (int k = 0; k < 5; ++k) series.columns[k].values.push_back(values[k]);
}

template <int N>
InvariantSeries empty_series(const Trajectory<N>& traj, bool with_phase) {
  InvariantSeries series;
  series.times = traj.times;
  series.params = traj.params;
  for (const char* name : kSE3Names) series.columns.push_back({name, {}});
  if (with_phase) {
    for (const char* name : kPhaseNames) series.columns.push_back({name, {}});
  }
  for (auto& col : series.columns) col.values.reserve(traj.states.size());
  return series;
}

}  // namespace

bool InvariantSeries::has(std::string_view name) const {
  for (const auto& col : columns) {
    if (col.name == name) return true;
  }
  return false;
}

const std::vector<double>& InvariantSeries::operator[](std::string_view name) const {
  for (const auto& col : columns) {
    if (col.name == name) return col.values;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no invariant column named '" + std::string(name) + "'");
}

std::vector<SE3Dual> se3_states(const CollectiveTrajectory& traj) {
  std::vector<SE3Dual> out;
  out.reserve(traj.states.size());
  for (const auto& y : traj.states) out.push_back(collective_M(PhasePoint::from_real(y)));
  return out;
}

std::vector<SE3Dual> se3_states(const DirectTrajectory& traj) {
  std::vector<SE3Dual> out;
  out.reserve(traj.states.size());
  for (const auto& y : traj.states) out.push_back(SE3Dual::from_vector(y));
  return out;
}

InvariantSeries invariant_series(const CollectiveTrajectory& traj) {
  InvariantSeries series = empty_series(traj, true);
  for (const auto& y : traj.states) {
    const PhasePoint z = PhasePoint::from_real(y);
    append_se3(series, collective_M(z));
    const PhaseInvariants inv = invariants_phase(z);
    const double values[] = {inv.F1, inv.F2, inv.F3, inv.J1, inv.J2, inv.J3};
    for (int k = 0; k < 6; ++k) series.columns[5 + k].values.push_back(values[k]);
  }
  return series;
}

InvariantSeries invariant_series(const DirectTrajectory& traj) {
  InvariantSeries series = empty_series(traj, false);
  for (const auto& y : traj.states) append_se3(series, SE3Dual::from_vector(y));
  return series;
}

const Drift& DriftReport::operator[](std::string_view name) const {
  for (const auto& d : entries) {
    if (d.name == name) return d;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no drift entry named '" + std::string(name) + "'");
}

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) {
    throw Error(ErrorCode::SeriesTooShort, "least squares needs two or more samples");
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    sxy += dx * (y[i] - mean_y);
    sxx += dx * dx;
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "least squares needs distinct abscissae");
  }
  return sxy / sxx;
}

DriftReport drift_report(const InvariantSeries& series) {
  if (series.size() < 2) {
    throw Error(ErrorCode::SeriesTooShort, "drift report needs two or more samples");
  }
  DriftReport report;
  for (const auto& col : series.columns) {
    Drift d;
    d.name = col.name;
    d.initial = col.values.front();
    // Fit the deviation rather than the raw value so a large offset does not
    // cost precision in the slope.
    std::vector<double> dev(col.values.size());
    for (std::size_t i = 0; i < dev.size(); ++i) {
      dev[i] = col.values[i] - d.initial;
      d.max_abs_dev = std::max(d.max_abs_dev, std::abs(dev[i]));
    }
    d.final_dev = dev.back();
    d.lsq_slope = lsq_slope(series.times, dev);
    report.entries.push_back(d);
  }
  return report;
}

double convergence_order(const std::vector<std::pair<double, double>>& dt_err) {
  if (dt_err.size() < 3) {
    throw Error(ErrorCode::InsufficientData, "convergence order needs three or more points");
  }
  std::vector<double> log_dt, log_err;
  for (const auto& [dt, err] : dt_err) {
    if (!(dt > 0.0) || !(err > 0.0)) {
      throw Error(ErrorCode::NonPositiveValue, "step sizes and errors must be positive");
    }
    log_dt.push_back(std::log(dt));
    log_err.push_back(std::log(err));
  }
  return lsq_slope(log_dt, log_err);
}

double heavytop_bracket(const SE3Dual& s, const Vec6& grad_f, const Vec6& grad_g) {
  const Vec3 df_pi = grad_f.head<3>(), df_gamma = grad_f.tail<3>();
  const Vec3 dg_pi = grad_g.head<3>(), dg_gamma = grad_g.tail<3>();
  return -s.Pi.dot(df_pi.cross(dg_pi)) -
         s.Gamma.dot(df_pi.cross(dg_gamma) - dg_pi.cross(df_gamma));
}

BracketResiduals bracket_check(const PhasePoint& z) {
  const JacobianM jac = jacobian_M(z);
  const SE3Dual s = collective_M(z);
  const Eigen::Matrix<double, 6, 6> unit = Eigen::Matrix<double, 6, 6>::Identity();
  BracketResiduals residuals;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      const double pulled = canonical_bracket(jac.row(a).transpose(), jac.row(b).transpose());
      const double direct = heavytop_bracket(s, unit.col(a), unit.col(b));
      residuals(a, b) = std::abs(pulled - direct);
    }
  }
  return residuals;
}

}  // namespace heavytop
