#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdosc/errors.hpp"
#include "tdosc/parallel.hpp"
#include "tdosc/runner.hpp"
#include "tdosc/scenario.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 2, kNumerical = 3, kInvariant = 4 };

struct Common {
  std::string config;
  std::string preset;
  std::string out;
  std::string format;
  std::optional<double> tol;
  int threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  auto* cfg = cmd->add_option("--config", c.config, "Scenario file (YAML)");
  auto* pre = cmd->add_option("--preset", c.preset, "Bundled scenario name");
  cfg->excludes(pre);
  cmd->add_option("--out", c.out, "Output directory");
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--tol", c.tol, "ODE tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", c.threads, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
}

tdosc::ScenarioConfig resolve(const Common& c) {
  if (c.config.empty() && c.preset.empty()) {
    throw tdosc::ConfigError("", 0, "one of --config or --preset is required");
  }
  tdosc::ScenarioConfig cfg = c.preset.empty() ? tdosc::parse_config(c.config) : tdosc::load_preset(c.preset);
  if (!c.out.empty()) cfg.output_dir = c.out;
  if (!c.format.empty()) cfg.format = c.format == "json" ? tdosc::OutputFormat::Json : tdosc::OutputFormat::Csv;
  if (c.tol) cfg.tol = *c.tol;
  tdosc::set_threads(c.threads);
  return cfg;
}

int emit_error(const char* kind, int code, const std::string& message, const tdosc::ConfigError* ce = nullptr) {
  nlohmann::json rec = {{"error", kind}, {"message", message}, {"exit_code", code}};
  if (ce) {
    rec["field"] = ce->field();
    rec["line"] = ce->line();
  }
  std::cerr << rec.dump() << '\n';
  return code;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum dynamics of time-dependent generalized oscillators"};
  app.require_subcommand(1);

  Common run_opts, check_opts;
  auto* run = app.add_subcommand("run", "Compute the requested products and write a manifest");
  add_common(run, run_opts);
  auto* chk = app.add_subcommand("check", "Run the invariant suite only");
  add_common(chk, check_opts);
  auto* pre = app.add_subcommand("presets", "List bundled scenarios");
  std::string show;
  pre->add_option("--show", show, "Print the YAML of one preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return emit_error("usage", kConfig, e.what());
  }

  try {
    if (*pre) {
      for (const auto& p : tdosc::presets()) {
        if (show.empty()) {
          std::cout << p.name << "  " << p.description << '\n';
        } else if (p.name == show) {
          std::cout << p.yaml;
          return kOk;
        }
      }
      if (!show.empty()) throw tdosc::ConfigError("--show", 0, "unknown preset '" + show + "'");
      return kOk;
    }

    if (*run) {
      const tdosc::ScenarioConfig cfg = resolve(run_opts);
      const tdosc::RunResult res = tdosc::run_scenario(cfg);
      for (const auto& line : res.log) std::cout << line << '\n';
      std::cout << res.report.to_text();
      std::cout << "manifest: " << res.manifest.string() << '\n';
      print_warnings(res.warnings);
      return res.report.passed() ? kOk : kInvariant;
    }

    const tdosc::ScenarioConfig cfg = resolve(check_opts);
    std::vector<std::string> warnings;
    const tdosc::InvariantReport rep = tdosc::check(cfg, &warnings);
    std::cout << rep.to_text();
    print_warnings(warnings);
    return rep.passed() ? kOk : kInvariant;
  } catch (const tdosc::ConfigError& e) {
    return emit_error("config", kConfig, e.what(), &e);
  } catch (const tdosc::NumericalError& e) {
    return emit_error("numerical", kNumerical, e.what());
  } catch (const tdosc::DomainError& e) {
    return emit_error("domain", kNumerical, e.what());
  } catch (const std::exception& e) {
    return emit_error("io", kNumerical, e.what());
  }
}
