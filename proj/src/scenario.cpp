#include "tdosc/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

#include "tdosc/errors.hpp"

namespace tdosc {

std::string_view product_name(Product p) {
  switch (p) {
    case Product::Mode: return "mode";
    case Product::Trajectory: return "trajectory";
    case Product::Moments: return "moments";
    case Product::EllipseTrack: return "ellipse_track";
    case Product::WignerGrid: return "wigner_grid";
    case Product::Bogoliubov: return "bogoliubov";
  }
  return "unknown";
}

std::vector<double> TimeGrid::times() const {
  std::vector<double> t(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    t[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  t.back() = stop;
  return t;
}

namespace {

int line_of(const YAML::Node& n) { return n.Mark().is_null() ? 0 : n.Mark().line + 1; }

[[noreturn]] void fail(const std::string& path, const YAML::Node& n, const std::string& msg) {
  throw ConfigError(path, line_of(n), path + ": " + msg);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void require_map(const YAML::Node& n, const std::string& path) {
  if (!n.IsMap()) fail(path, n, "expected a mapping");
}

void reject_unknown(const YAML::Node& n, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
  for (const auto& kv : n) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(join(path, key), kv.first, "unknown key");
    }
  }
}

double as_double(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail(path, n, "expected a number");
  const std::string s = n.Scalar();
  if (s == "inf" || s == ".inf" || s == "+inf" || s == "infinity") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) fail(path, n, "expected a number, got '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    fail(path, n, "expected a number, got '" + s + "'");
  }
}

double as_finite(const YAML::Node& n, const std::string& path) {
  const double v = as_double(n, path);
  if (!std::isfinite(v)) fail(path, n, "expected a finite number");
  return v;
}

double as_positive(const YAML::Node& n, const std::string& path) {
  const double v = as_finite(n, path);
  if (!(v > 0.0)) fail(path, n, "must be positive");
  return v;
}

// Complex values: a scalar (real), [re, im], or {re: .., im: ..}.
cdouble as_complex(const YAML::Node& n, const std::string& path) {
  if (n.IsScalar()) return as_finite(n, path);
  if (n.IsSequence()) {
    if (n.size() != 2) fail(path, n, "complex value needs [re, im]");
    return {as_finite(n[0], path + "[0]"), as_finite(n[1], path + "[1]")};
  }
  if (n.IsMap()) {
    reject_unknown(n, path, {"re", "im"});
    const double re = n["re"] ? as_finite(n["re"], path + ".re") : 0.0;
    const double im = n["im"] ? as_finite(n["im"], path + ".im") : 0.0;
    return {re, im};
  }
  fail(path, n, "expected a complex number");
}

std::size_t as_count(const YAML::Node& n, const std::string& path) {
  const double v = as_finite(n, path);
  if (v < 0.0 || v != std::floor(v)) fail(path, n, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string as_string(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) fail(path, n, "expected a string");
  return n.Scalar();
}

const YAML::Node need(const YAML::Node& parent, const std::string& key, const std::string& path) {
  const YAML::Node n = parent[key];
  if (!n) fail(join(path, key), parent, "required field missing");
  return n;
}

InverseTemperature parse_beta(const YAML::Node& parent, const std::string& path) {
  const bool has_beta = static_cast<bool>(parent["beta"]);
  const bool has_temp = static_cast<bool>(parent["temperature"]);
  if (has_beta && has_temp) {
    fail(join(path, "temperature"), parent["temperature"], "give either beta or temperature");
  }
  try {
    if (has_beta) {
      const double b = as_double(parent["beta"], join(path, "beta"));
      return std::isinf(b) && b > 0 ? InverseTemperature::vacuum() : InverseTemperature::finite(b);
    }
    if (has_temp) {
      return InverseTemperature::from_temperature(
          as_double(parent["temperature"], join(path, "temperature")));
    }
  } catch (const DomainError& e) {
    fail(join(path, has_beta ? "beta" : "temperature"), parent, e.what());
  }
  return InverseTemperature::vacuum();
}

CoefficientProfile parse_profile(const YAML::Node& n, const std::filesystem::path& base) {
  const std::string path = "profile";
  require_map(n, path);
  const std::string kind = as_string(need(n, "kind", path), "profile.kind");
  try {
    if (kind == "static") {
      reject_unknown(n, path, {"kind", "mass", "omega0"});
      const double m = n["mass"] ? as_positive(n["mass"], "profile.mass") : 1.0;
      return CoefficientProfile::static_oscillator(m, as_positive(need(n, "omega0", path), "profile.omega0"));
    }
    if (kind == "tanh") {
      reject_unknown(n, path, {"kind", "mass", "omega1", "omega0", "omega_i", "omega_f", "tau"});
      const double m = n["mass"] ? as_positive(n["mass"], "profile.mass") : 1.0;
      const double tau = as_positive(need(n, "tau", path), "profile.tau");
      const bool direct = n["omega1"] || n["omega0"];
      const bool asym = n["omega_i"] || n["omega_f"];
      if (direct && asym) fail(path, n, "give either (omega1, omega0) or (omega_i, omega_f)");
      if (asym) {
        return CoefficientProfile::tanh_from_asymptotes(
            m, as_positive(need(n, "omega_i", path), "profile.omega_i"),
            as_positive(need(n, "omega_f", path), "profile.omega_f"), tau);
      }
      return CoefficientProfile::tanh_sweep(m, as_positive(need(n, "omega1", path), "profile.omega1"),
                                            as_finite(need(n, "omega0", path), "profile.omega0"), tau);
    }
    if (kind == "tabulated") {
      reject_unknown(n, path, {"kind", "csv"});
      std::filesystem::path csv = as_string(need(n, "csv", path), "profile.csv");
      if (csv.is_relative()) csv = base / csv;
      return CoefficientProfile::tabulated_csv(csv);
    }
  } catch (const DomainError& e) {
    fail(path, n, e.what());
  }
  fail("profile.kind", n["kind"], "unknown profile kind '" + kind + "'");
}

ModeSpec parse_mode(const YAML::Node& n, const std::filesystem::path& base) {
  const std::string path = "mode";
  require_map(n, path);
  ModeSpec spec;
  const std::string kind = as_string(need(n, "kind", path), "mode.kind");
  if (kind == "static") {
    reject_unknown(n, path, {"kind", "mu", "nu"});
    spec.kind = ModeSpec::Kind::Static;
    const cdouble nu = n["nu"] ? as_complex(n["nu"], "mode.nu") : cdouble{};
    const cdouble mu = n["mu"] ? as_complex(n["mu"], "mode.mu") : std::sqrt(1.0 + std::norm(nu));
    spec.pair = {mu, nu};
    if (std::abs(spec.pair.residual()) > 1e-10) {
      fail(n["mu"] ? "mode.mu" : "mode.nu", n, "needs |mu|^2 - |nu|^2 = 1");
    }
  } else if (kind == "tanh") {
    reject_unknown(n, path, {"kind"});
    spec.kind = ModeSpec::Kind::Tanh;
  } else if (kind == "initial") {
    reject_unknown(n, path, {"kind", "plane_wave", "u0", "u_dot0"});
    spec.kind = ModeSpec::Kind::Initial;
    spec.plane_wave = n["plane_wave"] && n["plane_wave"].as<bool>();
    if (spec.plane_wave && (n["u0"] || n["u_dot0"])) {
      fail("mode.plane_wave", n["plane_wave"], "give either plane_wave or (u0, u_dot0)");
    }
    if (!spec.plane_wave) {
      spec.u0 = as_complex(need(n, "u0", path), "mode.u0");
      spec.u_dot0 = as_complex(need(n, "u_dot0", path), "mode.u_dot0");
    }
  } else if (kind == "file") {
    reject_unknown(n, path, {"kind", "path"});
    spec.kind = ModeSpec::Kind::File;
    spec.path = as_string(need(n, "path", path), "mode.path");
    if (spec.path.is_relative()) spec.path = base / spec.path;
  } else {
    fail("mode.kind", n["kind"], "unknown mode kind '" + kind + "'");
  }
  return spec;
}

StateSpec parse_state(const YAML::Node& n) {
  require_map(n, "state");
  reject_unknown(n, "state", {"beta", "temperature", "z", "hbar_omega0"});
  StateSpec s;
  s.beta = parse_beta(n, "state");
  if (n["z"]) s.z = as_complex(n["z"], "state.z");
  if (n["hbar_omega0"]) s.hbar_omega0 = as_positive(n["hbar_omega0"], "state.hbar_omega0");
  return s;
}

InvariantSpec parse_invariant(const YAML::Node& n) {
  const std::string path = "invariant";
  require_map(n, path);
  reject_unknown(n, path, {"A", "B", "D", "E", "beta", "temperature"});
  InvariantSpec s;
  s.invariant.A = n["A"] ? as_complex(n["A"], "invariant.A") : cdouble{};
  s.invariant.B = as_finite(need(n, "B", path), "invariant.B");
  s.invariant.D = n["D"] ? as_complex(n["D"], "invariant.D") : cdouble{};
  s.invariant.E = n["E"] ? as_finite(n["E"], "invariant.E") : 0.0;
  s.beta = parse_beta(n, path);
  return s;
}

Product parse_product(const YAML::Node& n, const std::string& path) {
  const std::string s = as_string(n, path);
  for (Product p : {Product::Mode, Product::Trajectory, Product::Moments, Product::EllipseTrack,
                    Product::WignerGrid, Product::Bogoliubov}) {
    if (s == product_name(p)) return p;
  }
  fail(path, n, "unknown product '" + s + "'");
}

}  // namespace

ScenarioConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw ConfigError("", e.mark.is_null() ? 0 : e.mark.line + 1, std::string("malformed YAML: ") + e.msg);
  }
  if (!root.IsMap()) throw ConfigError("", 1, "scenario must be a YAML mapping");
  reject_unknown(root, "", {"name", "description", "hbar", "profile", "mode", "state", "invariant",
                            "grid", "outputs", "wigner", "tolerances", "thresholds", "output"});

  ScenarioConfig cfg;
  try {
    if (root["name"]) cfg.name = as_string(root["name"], "name");
    if (root["hbar"]) cfg.hbar = as_positive(root["hbar"], "hbar");
    cfg.profile = parse_profile(need(root, "profile", ""), base_dir);
    cfg.mode = parse_mode(need(root, "mode", ""), base_dir);

    if (root["state"] && root["invariant"]) {
      throw ConfigError("state,invariant", line_of(root["invariant"]),
                        "state and invariant are mutually exclusive (state at line " +
                            std::to_string(line_of(root["state"])) + ", invariant at line " +
                            std::to_string(line_of(root["invariant"])) + ")");
    }
    if (root["invariant"]) {
      cfg.invariant = parse_invariant(root["invariant"]);
    } else {
      cfg.state = root["state"] ? parse_state(root["state"]) : StateSpec{};
    }

    const YAML::Node g = need(root, "grid", "");
    require_map(g, "grid");
    reject_unknown(g, "grid", {"start", "stop", "steps"});
    cfg.grid.start = as_finite(need(g, "start", "grid"), "grid.start");
    cfg.grid.stop = as_finite(need(g, "stop", "grid"), "grid.stop");
    cfg.grid.steps = as_count(need(g, "steps", "grid"), "grid.steps");
    if (cfg.grid.steps < 2) fail("grid.steps", g["steps"], "needs at least 2 steps");
    if (!(cfg.grid.stop > cfg.grid.start)) fail("grid.stop", g["stop"], "must exceed grid.start");

    if (root["outputs"]) {
      const YAML::Node o = root["outputs"];
      if (!o.IsSequence()) fail("outputs", o, "expected a list of products");
      for (std::size_t i = 0; i < o.size(); ++i) {
        const Product p = parse_product(o[i], "outputs[" + std::to_string(i) + "]");
        if (std::find(cfg.outputs.begin(), cfg.outputs.end(), p) == cfg.outputs.end()) {
          cfg.outputs.push_back(p);
        }
      }
    }

    if (root["wigner"]) {
      const YAML::Node w = root["wigner"];
      require_map(w, "wigner");
      reject_unknown(w, "wigner", {"times", "half_width_sigmas", "samples"});
      if (w["times"]) {
        if (!w["times"].IsSequence()) fail("wigner.times", w["times"], "expected a list");
        for (std::size_t i = 0; i < w["times"].size(); ++i) {
          cfg.wigner.times.push_back(
              as_finite(w["times"][i], "wigner.times[" + std::to_string(i) + "]"));
        }
      }
      if (w["half_width_sigmas"]) {
        cfg.wigner.half_width_sigmas = as_positive(w["half_width_sigmas"], "wigner.half_width_sigmas");
      }
      if (w["samples"]) {
        cfg.wigner.samples = as_count(w["samples"], "wigner.samples");
        if (cfg.wigner.samples < 2) fail("wigner.samples", w["samples"], "needs at least 2");
      }
    }
    if (cfg.wigner.times.empty()) cfg.wigner.times.push_back(cfg.grid.start);
    for (std::size_t i = 0; i < cfg.wigner.times.size(); ++i) {
      const double t = cfg.wigner.times[i];
      if (t < cfg.grid.start || t > cfg.grid.stop) {
        fail("wigner.times[" + std::to_string(i) + "]", root["wigner"], "outside the time grid");
      }
    }

    if (root["tolerances"]) {
      const YAML::Node t = root["tolerances"];
      require_map(t, "tolerances");
      reject_unknown(t, "tolerances", {"ode"});
      if (t["ode"]) cfg.tol = as_positive(t["ode"], "tolerances.ode");
    }
    if (root["thresholds"]) {
      const YAML::Node t = root["thresholds"];
      require_map(t, "thresholds");
      reject_unknown(t, "thresholds",
                     {"wronskian", "lambda_product", "normalization", "det_sigma", "bogoliubov"});
      auto opt = [&](const char* key, std::optional<double>& dst) {
        if (t[key]) dst = as_positive(t[key], std::string("thresholds.") + key);
      };
      opt("wronskian", cfg.thresholds.wronskian);
      opt("lambda_product", cfg.thresholds.lambda_product);
      opt("normalization", cfg.thresholds.normalization);
      opt("det_sigma", cfg.thresholds.det_sigma);
      opt("bogoliubov", cfg.thresholds.bogoliubov);
    }
    if (root["output"]) {
      const YAML::Node o = root["output"];
      require_map(o, "output");
      reject_unknown(o, "output", {"dir", "format"});
      if (o["dir"]) cfg.output_dir = as_string(o["dir"], "output.dir");
      if (o["format"]) {
        const std::string f = as_string(o["format"], "output.format");
        if (f == "csv") cfg.format = OutputFormat::Csv;
        else if (f == "json") cfg.format = OutputFormat::Json;
        else fail("output.format", o["format"], "expected csv or json");
      }
    }

    // Cross-field consistency.
    const ProfileKind pk = cfg.profile.kind();
    if (cfg.mode.kind == ModeSpec::Kind::Static && pk != ProfileKind::Static) {
      fail("mode.kind", root["mode"]["kind"], "static closed form needs a static profile");
    }
    if (cfg.mode.kind == ModeSpec::Kind::Tanh && pk != ProfileKind::Tanh) {
      fail("mode.kind", root["mode"]["kind"], "hypergeometric closed form needs a tanh profile");
    }
    const auto [lo, hi] = cfg.profile.domain();
    if (cfg.grid.start < lo || cfg.grid.stop > hi) {
      fail("grid", root["grid"], "time grid exceeds the tabulated profile range");
    }
  } catch (const YAML::Exception& e) {
    throw ConfigError("", e.mark.is_null() ? 0 : e.mark.line + 1, std::string("YAML error: ") + e.msg);
  }
  return cfg;
}

ScenarioConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path.parent_path());
}

}  // namespace tdosc
