#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tdosc/gaussian.hpp"
#include "tdosc/invariants.hpp"
#include "tdosc/profiles.hpp"

namespace tdosc {

enum class OutputFormat { Csv, Json };

enum class Product { Mode, Trajectory, Moments, EllipseTrack, WignerGrid, Bogoliubov };

std::string_view product_name(Product p);

struct ModeSpec {
  enum class Kind { Static, Tanh, Initial, File };
  Kind kind = Kind::Static;
  BogoliubovPair pair;      // static
  bool plane_wave = false;  // initial: incoming plane wave at grid.start
  cdouble u0, u_dot0;       // initial
  std::filesystem::path path;  // file: mode CSV as written by the `mode` product
};

struct StateSpec {
  InverseTemperature beta = InverseTemperature::vacuum();
  cdouble z;
  std::optional<double> hbar_omega0;
};

struct InvariantSpec {
  QuadraticInvariant invariant;
  InverseTemperature beta = InverseTemperature::vacuum();
};

struct TimeGrid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t steps = 2;

  std::vector<double> times() const;
};

struct WignerSpec {
  std::vector<double> times;
  double half_width_sigmas = 5.0;
  std::size_t samples = 201;
};

/// Pass thresholds for the invariant report; unset entries default from the ODE tolerance.
struct Thresholds {
  std::optional<double> wronskian;
  std::optional<double> lambda_product;
  std::optional<double> normalization;
  std::optional<double> det_sigma;
  std::optional<double> bogoliubov;
};

struct ScenarioConfig {
  std::string name = "scenario";
  double hbar = 1.0;
  CoefficientProfile profile = CoefficientProfile::static_oscillator(1.0, 1.0);
  ModeSpec mode;
  std::optional<StateSpec> state;  // defaults to the vacuum when neither spec is given
  std::optional<InvariantSpec> invariant;
  TimeGrid grid;
  std::vector<Product> outputs;
  WignerSpec wigner;
  double tol = 1e-9;
  Thresholds thresholds;
  std::filesystem::path output_dir = "out";
  OutputFormat format = OutputFormat::Csv;
};

/// Parses a YAML scenario. Throws ConfigError naming the offending field and line.
ScenarioConfig parse_config(const std::filesystem::path& path);
/// `base_dir` resolves relative file references inside the text.
ScenarioConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir);

struct PresetInfo {
  std::string_view name;
  std::string_view description;
  std::string_view yaml;
};

const std::vector<PresetInfo>& presets();
/// Throws ConfigError for unknown names.
ScenarioConfig load_preset(std::string_view name);

}  // namespace tdosc
