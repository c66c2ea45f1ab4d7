#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "heavytop/errors.hpp"
#include "heavytop/experiments.hpp"

namespace heavytop {

namespace {

const std::set<std::string> kKnownKeys = {
    "experiment", "method", "formulation", "dt",  "t-final", "pi0",    "gamma0",
    "preset",     "inertia", "mgl",        "c",   "gauge",   "output", "stride"};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ConfigParse, what);
}

double parse_plain_double(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    parse_error("not a number: '" + text + "'");
  }
  if (used != t.size()) parse_error("not a number: '" + text + "'");
  return v;
}

/// Accepts "0.02" as well as "1/50".
double parse_real(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_plain_double(text);
  const double num = parse_plain_double(text.substr(0, slash));
  const double den = parse_plain_double(text.substr(slash + 1));
  if (den == 0.0) parse_error("division by zero in '" + text + "'");
  return num / den;
}

int parse_int(const std::string& text) {
  const double v = parse_plain_double(text);
  if (v != std::floor(v) || std::abs(v) > 1e9) parse_error("not an integer: '" + text + "'");
  return static_cast<int>(v);
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

const std::string* find(const Settings& s, const std::string& key) {
  auto it = s.find(key);
  return it == s.end() ? nullptr : &it->second;
}

TopParams resolve_params(const Settings& s, const TopParams& current) {
  const std::string* preset = find(s, "preset");
  const std::string* inertia_text = find(s, "inertia");
  const std::string* mgl_text = find(s, "mgl");
  const std::string* c_text = find(s, "c");
  if (!preset && !inertia_text && !mgl_text && !c_text) return current;

  Vec3 inertia = inertia_text ? parse_vec3(*inertia_text) : current.inertia;
  Vec3 mgl(current.m, current.g, current.l);
  if (mgl_text) mgl = parse_vec3(*mgl_text);
  Vec3 c = c_text ? parse_vec3(*c_text) : current.c;

  const std::string kind = preset ? *preset : "general";
  if (kind == "lagrange") {
    if (inertia_text && std::abs(inertia.x() - inertia.y()) > 1e-12 * std::abs(inertia.x())) {
      parse_error("lagrange preset needs I1 = I2");
    }
    if (c_text && (c - Vec3::UnitZ()).norm() > 1e-12) parse_error("lagrange preset fixes c = (0,0,1)");
    if (!inertia_text) inertia = Vec3(current.inertia.x(), current.inertia.x(), current.inertia.z());
    return TopParams::lagrange(inertia.x(), inertia.z(), mgl.x(), mgl.y(), mgl.z());
  }
  if (kind == "kovalevskaya") {
    if (inertia_text && ((inertia - Vec3(2, 2, 1) * inertia.z()).norm() > 1e-12 * inertia.z())) {
      parse_error("kovalevskaya preset needs I1 = I2 = 2 I3");
    }
    if (c_text && (c - Vec3::UnitX()).norm() > 1e-12) parse_error("kovalevskaya preset fixes c = (1,0,0)");
    return TopParams::kovalevskaya(inertia.z(), mgl.x(), mgl.y(), mgl.z());
  }
  if (kind == "general") {
    try {
      return TopParams::make(inertia, mgl.x(), mgl.y(), mgl.z(), c);
    } catch (const Error& e) {
      parse_error(e.what());
    }
  }
  parse_error("unknown preset '" + kind + "' (expected lagrange, kovalevskaya or general)");
}

std::string run_tag(const RunConfig& cfg) {
  std::string method = to_string(cfg.stepper.method);
  method = method.substr(0, method.find('-'));
  return method + "-" + to_string(cfg.formulation);
}

}  // namespace

Method parse_method(const std::string& text) {
  const std::string t = trim(text);
  if (t == "explicit-midpoint") return Method::ExplicitMidpoint;
  if (t == "implicit-midpoint") return Method::ImplicitMidpoint;
  if (t == "rk4") return Method::RK4;
  parse_error("unknown method '" + text + "' (expected explicit-midpoint, implicit-midpoint or rk4)");
}

Formulation parse_formulation(const std::string& text) {
  const std::string t = trim(text);
  if (t == "collective") return Formulation::Collective;
  if (t == "direct") return Formulation::Direct;
  parse_error("unknown formulation '" + text + "' (expected collective or direct)");
}

LiftGauge parse_gauge(const std::string& text) {
  const std::string t = trim(text);
  if (t == "free") return LiftGauge::free();
  const std::string prefix = "fix-re-chi1=";
  if (t.rfind(prefix, 0) == 0) return LiftGauge::fix_re_chi1(parse_real(t.substr(prefix.size())));
  parse_error("unknown gauge '" + text + "' (expected free or fix-re-chi1=V)");
}

Vec3 parse_vec3(const std::string& text) {
  const auto parts = split_commas(text);
  if (parts.size() != 3) parse_error("expected three comma-separated values: '" + text + "'");
  return {parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
}

Settings parse_config_file(std::istream& in) {
  Settings settings;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      parse_error("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key)) {
      parse_error("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    settings[key] = value;
  }
  return settings;
}

Settings parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open config file " + path.string());
  return parse_config_file(in);
}

ExperimentPlan resolve_run_configs(const Settings& settings) {
  for (const auto& [key, value] : settings) {
    if (!kKnownKeys.count(key)) parse_error("unknown setting '" + key + "'");
  }

  const std::string* method = find(settings, "method");
  const std::string* formulation = find(settings, "formulation");

  ExperimentPlan plan;
  if (const std::string* name = find(settings, "experiment")) {
    plan = experiment_preset(*name);
    if (method || formulation) {
      const auto want_method = method ? std::optional(parse_method(*method)) : std::nullopt;
      const auto want_form =
          formulation ? std::optional(parse_formulation(*formulation)) : std::nullopt;
      std::vector<RunConfig> kept;
      for (const RunConfig& r : plan.runs) {
        if ((!want_method || r.stepper.method == *want_method) &&
            (!want_form || r.formulation == *want_form)) {
          kept.push_back(r);
        }
      }
      if (kept.empty()) {
        RunConfig r = plan.runs.front();
        if (want_method) r.stepper.method = *want_method;
        if (want_form) r.formulation = *want_form;
        r.tag = run_tag(r);
        r.output_path = plan.name + "." + r.tag + ".csv";
        kept.push_back(r);
      }
      plan.runs = std::move(kept);
      plan.convergence_study = plan.convergence_study && plan.runs.size() >= 3;
    }
  } else {
    plan.name = "custom";
    RunConfig r;
    if (method) r.stepper.method = parse_method(*method);
    if (formulation) r.formulation = parse_formulation(*formulation);
    r.tag = run_tag(r);
    plan.runs.push_back(r);
  }

  for (RunConfig& r : plan.runs) {
    r.params = resolve_params(settings, r.params);
    if (const auto* v = find(settings, "dt")) r.stepper.dt = parse_real(*v);
    if (const auto* v = find(settings, "t-final")) r.t_final = parse_real(*v);
    if (const auto* v = find(settings, "pi0")) r.Pi0 = parse_vec3(*v);
    if (const auto* v = find(settings, "gamma0")) r.Gamma0 = parse_vec3(*v);
    if (const auto* v = find(settings, "gauge")) r.gauge = parse_gauge(*v);
    if (const auto* v = find(settings, "stride")) r.sample_stride = parse_int(*v);
  }

  if (const auto* v = find(settings, "output")) {
    const std::filesystem::path out = *v;
    if (plan.runs.size() == 1) {
      plan.runs.front().output_path = out;
    } else {
      for (RunConfig& r : plan.runs) {
        std::filesystem::path p = out;
        p.replace_filename(out.stem().string() + "." + r.tag + out.extension().string());
        r.output_path = p;
      }
    }
  }

  for (const RunConfig& r : plan.runs) r.validate();
  return plan;
}

}  // namespace heavytop
