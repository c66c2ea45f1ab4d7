#pragma once

// Run configuration, named experiment presets and the run driver behind the
// command-line tool.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heavytop/algebra.hpp"
#include "heavytop/diagnostics.hpp"
#include "heavytop/hamiltonians.hpp"
#include "heavytop/integrators.hpp"
#include "heavytop/maps.hpp"

namespace heavytop {

struct RunConfig {
  std::string tag = "run";  ///< label used in file names and reports
  TopParams params = TopParams::kovalevskaya(1.0, 1.0, 1.0, 1.0);
  Vec3 Pi0{2.0, 3.0, 4.0};
  Vec3 Gamma0{0.5, 0.0, 0.8660254037844386};
  LiftGauge gauge;
  StepperConfig stepper;
  double t_final = 200.0;
  Formulation formulation = Formulation::Collective;
  std::filesystem::path output_path = "heavytop.csv";
  int sample_stride = 1;

  /// Throws Error(InvalidArgument) or Error(ZeroGamma).
  void validate() const;
};

/// A named bundle of runs. A convergence study additionally compares the
/// final state of every run against an RK4 reference at reference_dt.
struct ExperimentPlan {
  std::string name;
  std::vector<RunConfig> runs;
  bool convergence_study = false;
  double reference_dt = 1e-4;
};

/// kovalevskaya-fig1, kovalevskaya-fig2, lagrange-demo, convergence.
std::map<std::string, ExperimentPlan> experiment_presets();
/// Throws Error(UnknownExperiment).
ExperimentPlan experiment_preset(const std::string& name);

/// Summary of one completed run.
struct RunResult {
  RunConfig config;
  InvariantSeries series;
  DriftReport drift;
  std::filesystem::path csv_path;
  std::filesystem::path report_path;
  std::vector<SE3Dual> se3;  ///< heavy top states, one per sample
};

/// Integrates one configuration and evaluates its invariants, without I/O.
RunResult simulate(const RunConfig& config);

/// simulate() plus the CSV and the sidecar drift report next to it
/// (<output>.report.txt). Throws Error(Io) on write failure.
RunResult run(const RunConfig& config);

/// Runs every configuration of a plan concurrently, one thread per run.
std::vector<RunResult> run_all(const std::vector<RunConfig>& configs);

struct ConvergencePoint {
  Method method;
  double dt;
  double error;  ///< |M(z_dt(T)) - M(z_ref(T))|_inf
};

struct ConvergenceSummary {
  std::vector<ConvergencePoint> points;
  std::map<Method, double> order;
};

/// Global error of each collective run at its final time against an RK4
/// reference with step reference_dt, and the fitted order per method. All
/// results must share parameters, initial state, gauge and final time.
ConvergenceSummary convergence_study(const std::vector<RunResult>& results,
                                     double reference_dt);
void write_convergence_report(std::ostream& out, const ConvergenceSummary& summary);

// CSV and report formatting.

std::vector<std::string> csv_header(Formulation formulation);
void write_csv(std::ostream& out, const RunResult& result, int stride);
void write_drift_report(std::ostream& out, const RunResult& result);
/// 17 significant digits.
std::string format_double(double v);

// Configuration input.

/// Flags and config-file keys share names: experiment, method, formulation,
/// dt, t-final, pi0, gamma0, preset, inertia, mgl, c, gauge, output, stride.
/// Values are kept as text until resolve_run_configs().
using Settings = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment. Throws
/// Error(ConfigParse) on malformed lines or unknown keys.
Settings parse_config_file(std::istream& in);
Settings parse_config_file(const std::filesystem::path& path);

/// Builds the runs described by settings: the named experiment if given
/// (filtered by method/formulation when those are set), otherwise a single
/// run; the remaining keys override every run. Throws Error(ConfigParse),
/// Error(UnknownExperiment) or the RunConfig::validate() errors.
ExperimentPlan resolve_run_configs(const Settings& settings);

Method parse_method(const std::string& text);
Formulation parse_formulation(const std::string& text);
LiftGauge parse_gauge(const std::string& text);
Vec3 parse_vec3(const std::string& text);

}  // namespace heavytop
