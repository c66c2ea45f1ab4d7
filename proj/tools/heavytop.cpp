// heavytop: run heavy top experiments with the collective Lie-Poisson
// integrator and write invariant time series as CSV.
//
//   heavytop run --experiment kovalevskaya-fig1
//   heavytop run --method implicit-midpoint --formulation direct --t-final 50
//   heavytop run --config runs/lagrange.cfg --stride 10
//   heavytop list

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "heavytop/errors.hpp"
#include "heavytop/experiments.hpp"

namespace {

using heavytop::Error;
using heavytop::ErrorCode;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigParse:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnknownExperiment:
    case ErrorCode::ZeroGamma:
      return 2;
    default:
      return 1;
  }
}

void print_summary(const heavytop::RunResult& r) {
  std::cout << r.config.tag << " -> " << r.csv_path.string() << '\n';
  for (const char* name : {"h", "f1", "f2", "K"}) {
    const auto& d = r.drift[name];
    std::cout << "  " << name << ": max|dev| = " << heavytop::format_double(d.max_abs_dev)
              << ", slope = " << heavytop::format_double(d.lsq_slope) << '\n';
  }
}

int do_run(const heavytop::Settings& flags, const std::string& config_path) {
  heavytop::Settings settings;
  if (!config_path.empty()) settings = heavytop::parse_config_file(config_path);
  for (const auto& [key, value] : flags) settings[key] = value;

  const heavytop::ExperimentPlan plan = heavytop::resolve_run_configs(settings);
  const auto results = heavytop::run_all(plan.runs);
  for (const auto& r : results) print_summary(r);

  if (plan.convergence_study) {
    const auto summary = heavytop::convergence_study(results, plan.reference_dt);
    std::filesystem::path out = plan.runs.front().output_path;
    out.replace_filename(plan.name + ".convergence.txt");
    std::ofstream file(out);
    if (!file) throw Error(ErrorCode::Io, "cannot open " + out.string());
    heavytop::write_convergence_report(file, summary);
    heavytop::write_convergence_report(std::cout, summary);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heavy top dynamics via the collective Lie-Poisson integrator"};
  app.require_subcommand(1);

  std::map<std::string, std::string> values;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "integrate one run or a named experiment");
  auto flag = [&](const std::string& name, const std::string& help) {
    run->add_option("--" + name, values[name], help);
  };
  run->add_option("--config", config_path, "key = value config file; flags override it");
  flag("experiment", "kovalevskaya-fig1 | kovalevskaya-fig2 | lagrange-demo | convergence");
  flag("method", "explicit-midpoint | implicit-midpoint | rk4");
  flag("formulation", "collective | direct");
  flag("dt", "time step (accepts fractions such as 1/50)");
  flag("t-final", "final time");
  flag("pi0", "initial body angular momentum x,y,z");
  flag("gamma0", "initial vertical direction x,y,z");
  flag("preset", "lagrange | kovalevskaya | general");
  flag("inertia", "principal moments I1,I2,I3");
  flag("mgl", "mass, gravity, lever arm m,g,l");
  flag("c", "body-frame center direction x,y,z");
  flag("gauge", "free | fix-re-chi1=V");
  flag("output", "CSV path (a prefix when the experiment has several runs)");
  flag("stride", "write every N-th sample");

  CLI::App* list = app.add_subcommand("list", "list named experiments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& [name, plan] : heavytop::experiment_presets()) {
        std::cout << name << ':';
        for (const auto& r : plan.runs) std::cout << ' ' << r.tag;
        std::cout << '\n';
      }
      return 0;
    }
    heavytop::Settings flags;
    for (const auto& [name, value] : values) {
      if (run->count("--" + name) > 0) flags[name] = value;
    }
    return do_run(flags, config_path);
  } catch (const Error& e) {
    std::cerr << "heavytop: " << heavytop::to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "heavytop: " << e.what() << '\n';
    return 1;
  }
}
