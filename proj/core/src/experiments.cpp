#include "heavytop/experiments.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "heavytop/errors.hpp"

namespace heavytop {

namespace {

const Vec3 kDefaultPi0{2.0, 3.0, 4.0};
const Vec3 kDefaultGamma0{0.5, 0.0, std::sqrt(3.0) / 2.0};

const char* short_name(Method method) {
  switch (method) {
    case Method::ExplicitMidpoint: return "explicit";
    case Method::ImplicitMidpoint: return "implicit";
    case Method::RK4: return "rk4";
  }
  return "unknown";
}

RunConfig kovalevskaya_run(Method method, Formulation formulation) {
  RunConfig cfg;
  cfg.params = TopParams::kovalevskaya(1.0, 1.0, 1.0, 1.0);
  cfg.Pi0 = kDefaultPi0;
  cfg.Gamma0 = kDefaultGamma0;
  cfg.gauge = LiftGauge::fix_re_chi1(1.0);
  cfg.stepper.method = method;
  cfg.stepper.dt = 1.0 / 50.0;
  cfg.t_final = 200.0;
  cfg.formulation = formulation;
  cfg.tag = std::string(short_name(method)) + "-" + to_string(formulation);
  return cfg;
}

ExperimentPlan make_plan(std::string name, std::vector<RunConfig> runs) {
  ExperimentPlan plan;
  plan.name = std::move(name);
  for (auto& run : runs) run.output_path = plan.name + "." + run.tag + ".csv";
  plan.runs = std::move(runs);
  return plan;
}

std::size_t step_count(const RunConfig& cfg) {
  return static_cast<std::size_t>(std::llround(cfg.t_final / cfg.stepper.dt));
}

}  // namespace

void RunConfig::validate() const {
  stepper.validate();
  if (!(t_final > 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorCode::InvalidArgument, "t-final must be positive");
  }
  if (step_count(*this) < 1) {
    throw Error(ErrorCode::InvalidArgument, "t-final must cover at least one step");
  }
  if (sample_stride < 1) {
    throw Error(ErrorCode::InvalidArgument, "stride must be at least 1");
  }
  if (!Pi0.allFinite() || !Gamma0.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "initial state must be finite");
  }
  if (formulation == Formulation::Collective && !(Gamma0.norm() > 0.0)) {
    throw Error(ErrorCode::ZeroGamma, "collective runs need a nonzero Gamma0");
  }
}

std::map<std::string, ExperimentPlan> experiment_presets() {
  std::map<std::string, ExperimentPlan> presets;

  presets.emplace("kovalevskaya-fig1",
                  make_plan("kovalevskaya-fig1",
                            {kovalevskaya_run(Method::ExplicitMidpoint, Formulation::Collective),
                             kovalevskaya_run(Method::ExplicitMidpoint, Formulation::Direct),
                             kovalevskaya_run(Method::ImplicitMidpoint, Formulation::Collective)}));

  presets.emplace("kovalevskaya-fig2",
                  make_plan("kovalevskaya-fig2",
                            {kovalevskaya_run(Method::ImplicitMidpoint, Formulation::Direct),
                             kovalevskaya_run(Method::ImplicitMidpoint, Formulation::Collective)}));

  {
    std::vector<RunConfig> runs;
    for (Method method : {Method::ImplicitMidpoint, Method::ExplicitMidpoint}) {
      RunConfig cfg = kovalevskaya_run(method, Formulation::Collective);
      cfg.params = TopParams::lagrange(2.0, 1.0, 1.0, 1.0, 1.0);
      cfg.gauge = LiftGauge::free();
      runs.push_back(cfg);
    }
    presets.emplace("lagrange-demo", make_plan("lagrange-demo", std::move(runs)));
  }

  {
    std::vector<RunConfig> runs;
    for (Method method : {Method::ExplicitMidpoint, Method::ImplicitMidpoint}) {
      for (int n : {25, 50, 100, 200}) {
        RunConfig cfg = kovalevskaya_run(method, Formulation::Collective);
        cfg.stepper.dt = 1.0 / n;
        cfg.t_final = 5.0;
        cfg.tag += "-n" + std::to_string(n);
        runs.push_back(cfg);
      }
    }
    ExperimentPlan plan = make_plan("convergence", std::move(runs));
    plan.convergence_study = true;
    plan.reference_dt = 1e-4;
    presets.emplace("convergence", std::move(plan));
  }
  return presets;
}

ExperimentPlan experiment_preset(const std::string& name) {
  auto presets = experiment_presets();
  auto it = presets.find(name);
  if (it == presets.end()) {
    throw Error(ErrorCode::UnknownExperiment, "unknown experiment '" + name + "'");
  }
  return it->second;
}

RunResult simulate(const RunConfig& config) {
  config.validate();
  RunResult result;
  result.config = config;
  if (config.formulation == Formulation::Collective) {
    const PhasePoint z0 = lift({config.Pi0, config.Gamma0}, config.gauge);
    const CollectiveTrajectory traj = integrate(collective_system(config.params),
                                                z0.to_real(), config.t_final,
                                                config.stepper);
    result.series = invariant_series(traj);
    result.se3 = se3_states(traj);
  } else {
    const DirectTrajectory traj =
        integrate(direct_system(config.params), SE3Dual{config.Pi0, config.Gamma0}.to_vector(),
                  config.t_final, config.stepper);
    result.series = invariant_series(traj);
    result.se3 = se3_states(traj);
  }
  result.drift = drift_report(result.series);
  return result;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::vector<std::string> csv_header(Formulation formulation) {
  std::vector<std::string> header = {"t",      "Pi1",    "Pi2", "Pi3", "Gamma1", "Gamma2",
                                     "Gamma3", "h",      "f1",  "f2",  "f3",     "K"};
  if (formulation == Formulation::Collective) {
    for (const char* name : {"F1", "F2", "F3", "J1", "J2", "J3"}) header.emplace_back(name);
  }
  return header;
}

void write_csv(std::ostream& out, const RunResult& result, int stride) {
  const auto header = csv_header(result.config.formulation);
  for (std::size_t k = 0; k < header.size(); ++k) {
    out << (k ? "," : "") << header[k];
  }
  out << '\n';
  const InvariantSeries& series = result.series;
  const std::size_t step = static_cast<std::size_t>(std::max(stride, 1));
  for (std::size_t i = 0; i < series.size(); i += step) {
    const SE3Dual& s = result.se3[i];
    out << format_double(series.times[i]);
    for (int k = 0; k < 3; ++k) out << ',' << format_double(s.Pi[k]);
    for (int k = 0; k < 3; ++k) out << ',' << format_double(s.Gamma[k]);
    for (const auto& col : series.columns) out << ',' << format_double(col.values[i]);
    out << '\n';
  }
}

void write_drift_report(std::ostream& out, const RunResult& result) {
  const RunConfig& cfg = result.config;
  out << "run: " << cfg.tag << '\n'
      << "method: " << to_string(cfg.stepper.method) << '\n'
      << "formulation: " << to_string(cfg.formulation) << '\n'
      << "preset: " << to_string(cfg.params.kind()) << '\n'
      << "dt: " << format_double(cfg.stepper.dt) << '\n'
      << "t_final: " << format_double(cfg.t_final) << '\n'
      << "samples: " << result.series.size() << '\n'
      << "invariant,initial,max_abs_dev,lsq_slope,final_dev\n";
  for (const Drift& d : result.drift.entries) {
    out << d.name << ',' << format_double(d.initial) << ',' << format_double(d.max_abs_dev)
        << ',' << format_double(d.lsq_slope) << ',' << format_double(d.final_dev) << '\n';
  }
}

RunResult run(const RunConfig& config) {
  RunResult result = simulate(config);
  result.csv_path = config.output_path;
  result.report_path = config.output_path;
  result.report_path += ".report.txt";

  {
    std::ofstream csv(result.csv_path, std::ios::binary);
    if (!csv) throw Error(ErrorCode::Io, "cannot open " + result.csv_path.string());
    write_csv(csv, result, config.sample_stride);
    if (!csv) throw Error(ErrorCode::Io, "failed writing " + result.csv_path.string());
  }
  {
    std::ofstream report(result.report_path, std::ios::binary);
    if (!report) throw Error(ErrorCode::Io, "cannot open " + result.report_path.string());
    write_drift_report(report, result);
    if (!report) throw Error(ErrorCode::Io, "failed writing " + result.report_path.string());
  }
  return result;
}

std::vector<RunResult> run_all(const std::vector<RunConfig>& configs) {
  std::vector<std::future<RunResult>> pending;
  pending.reserve(configs.size());
  for (const RunConfig& cfg : configs) {
    pending.push_back(std::async(std::launch::async, [cfg] { return run(cfg); }));
  }
  std::vector<RunResult> results;
  results.reserve(configs.size());
  for (auto& f : pending) results.push_back(f.get());
  return results;
}

ConvergenceSummary convergence_study(const std::vector<RunResult>& results,
                                     double reference_dt) {
  if (results.empty()) {
    throw Error(ErrorCode::InsufficientData, "convergence study needs runs");
  }
  const RunConfig& base = results.front().config;
  for (const RunResult& r : results) {
    const RunConfig& c = r.config;
    if (c.formulation != Formulation::Collective || c.t_final != base.t_final ||
        c.Pi0 != base.Pi0 || c.Gamma0 != base.Gamma0 ||
        c.params.inertia != base.params.inertia || c.params.c != base.params.c ||
        c.params.mgl() != base.params.mgl()) {
      throw Error(ErrorCode::InvalidArgument,
                  "convergence runs must share the collective problem and final time");
    }
  }

  StepperConfig ref_cfg;
  ref_cfg.method = Method::RK4;
  ref_cfg.dt = reference_dt;
  const PhasePoint z0 = lift({base.Pi0, base.Gamma0}, base.gauge);
  const auto ref = integrate(collective_system(base.params), z0.to_real(), base.t_final, ref_cfg);
  const Vec6 ref_final = collective_M(PhasePoint::from_real(ref.states.back())).to_vector();

  ConvergenceSummary summary;
  std::map<Method, std::vector<std::pair<double, double>>> by_method;
  for (const RunResult& r : results) {
    const double err =
        (r.se3.back().to_vector() - ref_final).lpNorm<Eigen::Infinity>();
    summary.points.push_back({r.config.stepper.method, r.config.stepper.dt, err});
    by_method[r.config.stepper.method].emplace_back(r.config.stepper.dt, err);
  }
  for (const auto& [method, pairs] : by_method) {
    summary.order[method] = convergence_order(pairs);
  }
  return summary;
}

void write_convergence_report(std::ostream& out, const ConvergenceSummary& summary) {
  out << "method,dt,error\n";
  for (const auto& p : summary.points) {
    out << to_string(p.method) << ',' << format_double(p.dt) << ',' << format_double(p.error)
        << '\n';
  }
  for (const auto& [method, order] : summary.order) {
    out << "# order " << to_string(method) << " = " << format_double(order) << '\n';
  }
}

}  // namespace heavytop
