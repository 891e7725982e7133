#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tdosc/gaussian.hpp"
#include "tdosc/invariants.hpp"
#include "tdosc/scenario.hpp"

namespace tdosc {

/// Objects assembled from a scenario: profile -> mode -> state.
struct Pipeline {
  ScenarioConfig config;
  std::shared_ptr<const ModeSolution> mode;
  GaussianState state;
  std::optional<CanonicalInvariant> canonical;
  std::vector<double> times;
  std::vector<std::string> warnings;
};

/// Throws ConfigError for inputs the modules reject, NumericalError for integration failures.
Pipeline build_pipeline(const ScenarioConfig& config);

struct InvariantCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct InvariantReport {
  std::vector<InvariantCheck> checks;
  bool passed() const;
  std::string to_text() const;
};

/// Residuals over the scenario grid: Wronskian drift, lambda+ lambda- - 1, Wigner quadrature
/// mass, det Sigma vs (hbar/2)^2 (1 + 2 nbar)^2, and |mu|^2 - |nu|^2 - 1.
InvariantReport check_invariants(Pipeline& pipeline);

struct OutputFile {
  std::filesystem::path path;
  std::string product;
  std::string format;
};

struct RunResult {
  std::vector<OutputFile> files;
  InvariantReport report;
  std::vector<std::string> warnings;
  std::vector<std::string> log;  // human-readable summary lines
  std::filesystem::path manifest;
};

/// Computes every requested product, writes it under config.output_dir, and writes
/// manifest.json. Output bytes depend only on the config.
RunResult run_scenario(const ScenarioConfig& config);

/// Invariant suite only; no files written.
InvariantReport check(const ScenarioConfig& config, std::vector<std::string>* warnings = nullptr);

}  // namespace tdosc
