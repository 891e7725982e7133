#include "tdosc/runner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "tdosc/errors.hpp"
#include "tdosc/kernels.hpp"
#include "tdosc/mode_io.hpp"
#include "tdosc/table.hpp"

namespace tdosc {

namespace {

constexpr cdouble I{0.0, 1.0};

// Wide box used by the normalization invariant, independent of the product grid.
constexpr double kCheckBoxSigmas = 9.0;
constexpr std::size_t kCheckBoxSamples = 201;
// Estimated 2F1 relative error above which the closed form is flagged.
constexpr double kSpecfunWarn = 1e-8;

double reference_frequency(const CoefficientProfile& p, double t0) {
  if (const auto* s = p.static_params()) return s->omega0;
  if (p.tanh_params()) return asymptotic_frequencies(p).initial;
  const Coefficients c = p.at(t0);
  const double w2 = c.X * c.Z - c.Y * c.Y;
  if (!(w2 > 0.0)) {
    throw ConfigError("state.hbar_omega0", 0,
                      "profile has no real frequency at grid.start; set state.hbar_omega0");
  }
  return std::sqrt(w2);
}

std::shared_ptr<const ModeSolution> build_mode(const ScenarioConfig& cfg,
                                               const std::vector<double>& times) {
  const ModeSpec& m = cfg.mode;
  switch (m.kind) {
    case ModeSpec::Kind::Static: {
      const auto* s = cfg.profile.static_params();
      return std::make_shared<const ModeSolution>(static_mode(s->mass, s->omega0, m.pair));
    }
    case ModeSpec::Kind::Tanh:
      return std::make_shared<const ModeSolution>(tanh_closed_form(cfg.profile));
    case ModeSpec::Kind::Initial: {
      const double t0 = cfg.grid.start;
      ModeSample init = m.plane_wave ? plane_wave(cfg.profile, t0)
                                     : normalize_mode(m.u0, m.u_dot0, cfg.profile.at(t0).X);
      return std::make_shared<const ModeSolution>(
          integrate_mode(cfg.profile, init.u, init.u_dot, times, cfg.tol));
    }
    case ModeSpec::Kind::File:
      return std::make_shared<const ModeSolution>(read_mode_csv(cfg.profile, m.path));
  }
  throw ConfigError("mode.kind", 0, "unsupported mode kind");
}

std::optional<ModeSample> reference_sample(const CoefficientProfile& p, double t) {
  const Coefficients c = p.at(t);
  if (c.Y != 0.0 || !(c.X * c.Z > 0.0)) return std::nullopt;
  return plane_wave(p, t);
}

double threshold_or(const std::optional<double>& v, double fallback) { return v ? *v : fallback; }

}  // namespace

Pipeline build_pipeline(const ScenarioConfig& config) {
  Pipeline pl;
  pl.config = config;
  pl.times = config.grid.times();
  try {
    pl.mode = build_mode(config, pl.times);
  } catch (const DomainError& e) {
    throw ConfigError("mode", 0, std::string("mode: ") + e.what());
  }

  pl.state.hbar = config.hbar;
  if (config.invariant) {
    try {
      const CanonicalInvariant canon = canonicalize(config.invariant->invariant);
      pl.canonical = canon;
      pl.mode = std::make_shared<const ModeSolution>(
          config.profile, ModeSolution::Combination{pl.mode, canon.pair});
      pl.state.mode = pl.mode;
      pl.state.beta = config.invariant->beta;
      pl.state.hbar_omega0 = canon.hbar_omega0;
      pl.state.z = -canon.delta / canon.hbar_omega0;
    } catch (const DomainError& e) {
      throw ConfigError("invariant", 0, std::string("invariant: ") + e.what());
    }
  } else {
    const StateSpec s = config.state.value_or(StateSpec{});
    pl.state.mode = pl.mode;
    pl.state.beta = s.beta;
    pl.state.z = s.z;
    pl.state.hbar_omega0 =
        s.hbar_omega0 ? *s.hbar_omega0 : config.hbar * reference_frequency(config.profile, config.grid.start);
  }
  pl.state.validate();

  if (config.mode.kind == ModeSpec::Kind::Tanh) {
    double worst = 0.0;
    for (double t : pl.times) {
      double err = 0.0;
      tanh_mode(config.profile, t, &err);
      worst = std::max(worst, err);
    }
    if (worst > kSpecfunWarn) {
      pl.warnings.push_back("hypergeometric evaluation accuracy degraded: estimated relative error " +
                            format_double(worst));
    }
  }
  return pl;
}

bool InvariantReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.pass; });
}

std::string InvariantReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.name << " residual=" << format_double(c.residual)
       << " threshold=" << format_double(c.threshold) << '\n';
  }
  return os.str();
}

InvariantReport check_invariants(Pipeline& pl) {
  const ScenarioConfig& cfg = pl.config;
  const GaussianState& st = pl.state;
  const double tol_based = 1e3 * cfg.tol;
  InvariantReport rep;
  auto add = [&rep](std::string name, double residual, double threshold) {
    rep.checks.push_back({std::move(name), residual, threshold, std::isfinite(residual) && residual <= threshold});
  };

  double drift = 0.0, lam = 0.0, det = 0.0;
  const double n = mean_occupation(st.beta, st.hbar_omega0);
  const double det_expected = 0.25 * st.hbar * st.hbar * (1.0 + 2.0 * n) * (1.0 + 2.0 * n);
  for (double t : pl.times) {
    const ModeSample s = pl.mode->at(t);
    drift = std::max(drift, std::abs(wronskian(s.u, s.u_dot, cfg.profile.at(t).X) - I));
    const EllipseForm e = ellipse_canonical(h_ellipse(st, t), st.omega0(), {});
    lam = std::max(lam, std::abs(e.lambda_plus * e.lambda_minus - 1.0));
    det = std::max(det, std::abs(covariance(st, t).determinant() - det_expected) / det_expected);
  }
  add("wronskian_drift", drift, threshold_or(cfg.thresholds.wronskian, tol_based));
  add("lambda_product", lam, threshold_or(cfg.thresholds.lambda_product, tol_based));

  double norm = 0.0;
  for (double t : {pl.times.front(), pl.times[pl.times.size() / 2], pl.times.back()}) {
    const GridSpec g = centered_grid(st, t, kCheckBoxSigmas, kCheckBoxSamples);
    norm = std::max(norm, std::abs(grid_moments_parallel(wigner_kernel(st, t), g).mass - 1.0));
  }
  add("normalization", norm, threshold_or(cfg.thresholds.normalization, 1e-6));
  add("det_sigma", det, threshold_or(cfg.thresholds.det_sigma, tol_based));

  double bog = 0.0;
  const double t0 = pl.times.front();
  const double t1 = pl.times.back();
  const auto ref0 = reference_sample(cfg.profile, t0);
  const auto ref1 = reference_sample(cfg.profile, t1);
  if (ref0 && ref1) {
    bog = std::max(std::abs(bogoliubov(*ref0, pl.mode->at(t0), cfg.profile.at(t0).X).residual()),
                   std::abs(bogoliubov(*ref1, pl.mode->at(t1), cfg.profile.at(t1).X).residual()));
  } else {
    pl.warnings.push_back("no plane-wave reference basis at the grid ends; Bogoliubov check uses the canonical pair only");
  }
  if (pl.canonical) bog = std::max(bog, std::abs(pl.canonical->pair.residual()));
  add("bogoliubov_unitarity", bog, threshold_or(cfg.thresholds.bogoliubov, tol_based));
  return rep;
}

namespace {

struct Writer {
  const ScenarioConfig& cfg;
  RunResult& result;

  void table(const std::string& stem, const std::string& product, const Table& t) {
    const bool csv = cfg.format == OutputFormat::Csv;
    const auto path = cfg.output_dir / (stem + (csv ? ".csv" : ".json"));
    write_text(path, csv ? to_csv(t) : to_json(t));
    result.files.push_back({path, product, csv ? "csv" : "json"});
  }

  void json(const std::string& stem, const std::string& product, const std::string& text) {
    const auto path = cfg.output_dir / (stem + ".json");
    write_text(path, text);
    result.files.push_back({path, product, "json"});
  }
};

nlohmann::json complex_json(cdouble z) { return {z.real(), z.imag()}; }

nlohmann::json state_json(const GaussianState& st) {
  return {{"beta", st.beta.is_vacuum() ? nlohmann::json("inf") : nlohmann::json(st.beta.value())},
          {"hbar_omega0", st.hbar_omega0},
          {"z", complex_json(st.z)},
          {"hbar", st.hbar},
          {"mean_occupation", mean_occupation(st.beta, st.hbar_omega0)}};
}

void add_pair_row(Table& t, const std::string& kind, const BogoliubovPair& p) {
  t.add({kind, p.mu.real(), p.mu.imag(), p.nu.real(), p.nu.imag(), std::abs(p.nu), p.residual()});
}

void bogoliubov_product(Pipeline& pl, Writer& w, RunResult& result) {
  const ScenarioConfig& cfg = pl.config;
  const double t0 = pl.times.front();
  const double t1 = pl.times.back();
  Table t{{"kind", "mu_re", "mu_im", "nu_re", "nu_im", "abs_nu", "residual"}, {}};

  const auto ref_in = reference_sample(cfg.profile, t0);
  BogoliubovPair in_pair;
  if (ref_in) {
    in_pair = bogoliubov(*ref_in, pl.mode->at(t0), cfg.profile.at(t0).X);
    add_pair_row(t, "in_raw", in_pair);
    add_pair_row(t, "in_gauge_fixed", in_pair.gauge_fixed());
  }

  if (const TanhParams* th = cfg.profile.tanh_params()) {
    const auto f = asymptotic_frequencies(cfg.profile);
    const auto* s = th;
    const ModeSolution out_basis = static_mode(s->mass, f.final, {});
    const ModeSample out_sample = out_basis.at(t1);
    const BogoliubovPair ode_pair = bogoliubov(pl.mode->at(t1), out_sample, cfg.profile.at(t1).X);

    const AlphaCoefficients a = alpha_coefficients(th->tau, f.initial, f.final);
    const double scale = std::sqrt(f.final / f.initial);
    const BogoliubovPair alpha_pair{scale * a.plus, scale * std::conj(a.minus)};
    // Undo the in-basis pair so the prediction applies to this mode, not only the plane wave.
    const BogoliubovPair in_inverse{std::conj(in_pair.mu), -in_pair.nu};
    const BogoliubovPair predicted = in_inverse.then(alpha_pair);

    add_pair_row(t, "out_mode_raw", ode_pair);
    add_pair_row(t, "out_mode_gauge_fixed", ode_pair.gauge_fixed());
    add_pair_row(t, "out_alpha", predicted);
    add_pair_row(t, "out_alpha_gauge_fixed", predicted.gauge_fixed());
    const double dev = std::max(std::abs(ode_pair.mu - predicted.mu), std::abs(ode_pair.nu - predicted.nu));
    result.log.push_back("bogoliubov: max |(mu, nu)_mode - (mu, nu)_alpha| at t = " + format_double(t1) +
                         ": " + format_double(dev));

    // Sudden-limit squeezing from the shapes of the asymptotic Hamiltonian ellipses.
    const double m = s->mass;
    const QuadraticForm h_i{0.5 * m * f.initial * f.initial, 0.0, 0.5 / m};
    const QuadraticForm h_f{0.5 * m * f.final * f.final, 0.0, 0.5 / m};
    const EllipseForm ei = ellipse_canonical(h_i, f.initial, {});
    const EllipseForm ef = ellipse_canonical(h_f, f.initial, {});
    const BogoliubovPair sudden =
        bogoliubov(static_mode(m, f.initial, {}).at(t1), out_sample, cfg.profile.at(t1).X);
    const SqueezingEstimate sq = squeezing_from_ellipses(ei, ef, std::abs(sudden.nu));
    if (sq.used_fallback) {
      result.warnings.push_back(
          "asymptotic ellipses have different axis ordering; sudden |nu| taken from the Wronskian");
    }
    add_pair_row(t, "sudden_static", sudden);
    const double nan = std::nan("");
    t.add({std::string("sudden_eccentricity"), nan, nan, nan, nan, sq.abs_nu, nan});
    result.log.push_back("bogoliubov: sudden-limit |nu| from eccentricities " + format_double(sq.abs_nu) +
                         ", from static modes " + format_double(std::abs(sudden.nu)) +
                         ", finite tau |nu| " + format_double(std::abs(ode_pair.nu)));
  }
  w.table("bogoliubov", "bogoliubov", t);
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config) {
  Pipeline pl = build_pipeline(config);
  RunResult result;
  std::filesystem::create_directories(config.output_dir);
  Writer w{pl.config, result};
  const GaussianState& st = pl.state;
  const auto& times = pl.times;

  if (pl.canonical) {
    const CanonicalInvariant& c = *pl.canonical;
    nlohmann::json j = {{"hbar_omega0", c.hbar_omega0},
                        {"delta", complex_json(c.delta)},
                        {"epsilon", c.epsilon},
                        {"mu", complex_json(c.pair.mu)},
                        {"nu", complex_json(c.pair.nu)},
                        {"z", complex_json(st.z)},
                        {"imaginary_residue", c.imaginary_residue}};
    w.json("invariant", "invariant", j.dump(2) + "\n");
    result.log.push_back("canonical invariant: hbar_omega0 = " + format_double(c.hbar_omega0) +
                         ", delta = (" + format_double(c.delta.real()) + ", " +
                         format_double(c.delta.imag()) + "), epsilon = " + format_double(c.epsilon) +
                         ", mu = " + format_double(c.pair.mu.real()) + ", nu = (" +
                         format_double(c.pair.nu.real()) + ", " + format_double(c.pair.nu.imag()) + ")");
  }

  for (Product p : config.outputs) {
    switch (p) {
      case Product::Mode:
        w.table("mode", "mode", mode_table(*pl.mode, times));
        w.json("mode_header", "mode", mode_header_json(*pl.mode));
        break;
      case Product::Trajectory: {
        const PhasePoint c0 = coherent_center(st, times.front());
        const ClassicalTrajectory ct = classical_trajectory(config.profile, c0, times, config.tol);
        Table t{{"t", "q_c", "p_c", "q_classical", "p_classical"}, {}};
        for (std::size_t i = 0; i < times.size(); ++i) {
          const PhasePoint c = coherent_center(st, times[i]);
          t.add({times[i], c.q, c.p, ct.q[i], ct.p[i]});
        }
        w.table("trajectory", "trajectory", t);
        break;
      }
      case Product::Moments: {
        const double n = mean_occupation(st.beta, st.hbar_omega0);
        const double expected = 0.25 * st.hbar * st.hbar * (1.0 + 2.0 * n) * (1.0 + 2.0 * n);
        Table t{{"t", "q_mean", "p_mean", "sigma_qq", "sigma_pp", "sigma_qp", "det_sigma", "det_expected"}, {}};
        for (double time : times) {
          const Moments m = covariance(st, time);
          t.add({time, m.q_mean, m.p_mean, m.sigma_qq, m.sigma_pp, m.sigma_qp, m.determinant(), expected});
        }
        w.table("moments", "moments", t);
        break;
      }
      case Product::EllipseTrack: {
        Table t{{"t", "q_c", "p_c", "lambda_plus", "lambda_minus", "theta", "axis_ratio", "eccentricity"}, {}};
        for (const auto& s : ellipse_track_parallel(st, times)) {
          const EllipseForm& e = s.form;
          t.add({s.t, e.center.q, e.center.p, e.lambda_plus, e.lambda_minus, e.theta, e.axis_ratio,
                 e.eccentricity});
        }
        w.table("ellipse_track", "ellipse_track", t);
        break;
      }
      case Product::WignerGrid: {
        for (std::size_t k = 0; k < config.wigner.times.size(); ++k) {
          const double time = config.wigner.times[k];
          const GridSpec g = centered_grid(st, time, config.wigner.half_width_sigmas, config.wigner.samples);
          const WignerKernel kern = wigner_kernel(st, time);
          const std::vector<double> values = wigner_grid_parallel(kern, g);
          Table t{{"q", "p", "P"}, {}};
          t.rows.reserve(values.size());
          for (std::size_t i = 0; i < g.nq; ++i) {
            for (std::size_t j = 0; j < g.np; ++j) t.rows.push_back({g.q_at(i), g.p_at(j), values[i * g.np + j]});
          }
          const std::string stem = "wigner_" + std::to_string(k);
          w.table(stem, "wigner_grid", t);
          const GridMoments gm = grid_moments_parallel(kern, g);
          nlohmann::json d = {{"t", time},
                              {"q_min", g.q_min}, {"q_max", g.q_max}, {"q_step", g.dq()}, {"nq", g.nq},
                              {"p_min", g.p_min}, {"p_max", g.p_max}, {"p_step", g.dp()}, {"np", g.np},
                              {"half_width_sigmas", config.wigner.half_width_sigmas},
                              {"center", {kern.center.q, kern.center.p}},
                              {"peak", kern.prefactor},
                              {"quadrature_mass", gm.mass},
                              {"state", state_json(st)},
                              {"data", stem + (config.format == OutputFormat::Csv ? ".csv" : ".json")}};
          w.json(stem + "_descriptor", "wigner_grid", d.dump(2) + "\n");
        }
        break;
      }
      case Product::Bogoliubov:
        bogoliubov_product(pl, w, result);
        break;
    }
  }

  result.report = check_invariants(pl);
  result.warnings.insert(result.warnings.begin(), pl.warnings.begin(), pl.warnings.end());

  nlohmann::json manifest;
  manifest["scenario"] = config.name;
  manifest["format"] = config.format == OutputFormat::Csv ? "csv" : "json";
  manifest["state"] = state_json(st);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : result.files) {
    files.push_back({{"path", f.path.filename().string()}, {"product", f.product}, {"format", f.format}});
  }
  manifest["files"] = files;
  nlohmann::json inv = nlohmann::json::object();
  for (const auto& c : result.report.checks) {
    inv[c.name] = {{"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}};
  }
  manifest["invariants"] = inv;
  manifest["warnings"] = result.warnings;
  manifest["status"] = result.report.passed() ? "ok" : "invariant_violation";
  result.manifest = config.output_dir / "manifest.json";
  write_text(result.manifest, manifest.dump(2) + "\n");
  return result;
}

InvariantReport check(const ScenarioConfig& config, std::vector<std::string>* warnings) {
  Pipeline pl = build_pipeline(config);
  InvariantReport rep = check_invariants(pl);
  if (warnings) *warnings = pl.warnings;
  return rep;
}

}  // namespace tdosc
