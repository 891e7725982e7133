#pragma once

#include <complex>
#include <memory>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "tdosc/profiles.hpp"
#include "tdosc/specfun.hpp"

namespace tdosc {

/// A mode value and its time derivative at one instant.
struct ModeSample {
  cdouble u;
  cdouble u_dot;
};

/// Bogoliubov coefficients relating two mode bases, v = conj(mu) u - conj(nu) conj(u).
struct BogoliubovPair {
  cdouble mu{1.0, 0.0};
  cdouble nu{0.0, 0.0};

  /// |mu|^2 - |nu|^2 - 1.
  double residual() const { return std::norm(mu) - std::norm(nu) - 1.0; }
  /// Overall phase rotated so that mu is real and non-negative.
  BogoliubovPair gauge_fixed() const;
  /// Pair for u -> w given this (u -> v) and `next` (v -> w).
  BogoliubovPair then(const BogoliubovPair& next) const;
};

/// (u udot* - u* udot) / X; purely imaginary. Throws DomainError for X == 0.
cdouble wronskian(cdouble u, cdouble u_dot, double X);

/// Rescales (and conjugates if needed) initial data so the Wronskian is exactly i.
ModeSample normalize_mode(cdouble u0, cdouble u_dot0, double X);

/// Complex solution of the classical mode equation, either sampled on a grid or closed form.
/// Immutable; evaluation is thread-safe.
class ModeSolution {
 public:
  struct Sampled {
    std::vector<double> times;
    std::vector<cdouble> u;
    std::vector<cdouble> u_dot;
    std::vector<double> drift;  // |Wr - i| per sample
    double max_drift = 0.0;
    double tol = 0.0;
  };
  struct StaticClosedForm {
    double mass;
    double omega0;
    BogoliubovPair pair;
  };
  struct TanhClosedForm {};
  /// u = mu * base + conj(nu) * conj(base).
  struct Combination {
    std::shared_ptr<const ModeSolution> base;
    BogoliubovPair pair;
  };
  using Representation = std::variant<Sampled, StaticClosedForm, TanhClosedForm, Combination>;

  ModeSolution(CoefficientProfile profile, Representation rep);

  const CoefficientProfile& profile() const { return profile_; }
  const Representation& representation() const { return rep_; }
  const Sampled* sampled() const { return std::get_if<Sampled>(&rep_); }

  /// Value at t; grid-sampled solutions use cubic Hermite interpolation between samples.
  ModeSample at(double t) const;
  std::pair<double, double> domain() const;
  /// Largest |Wr - i| recorded during integration (0 for closed forms).
  double recorded_drift() const;

 private:
  CoefficientProfile profile_;
  Representation rep_;
};

/// Integrates the mode equation in first-order form (u, w = udot / X). Throws NumericalError
/// on step underflow or when the Wronskian drifts by more than 1e3 * tol.
ModeSolution integrate_mode(const CoefficientProfile& profile, cdouble u0, cdouble u_dot0,
                            std::span<const double> t_grid, double tol);

/// [mu e^{-i w t} + nu e^{i w t}] / sqrt(2 m w).
ModeSolution static_mode(double mass, double omega0, const BogoliubovPair& pair,
                         double tolerance = 1e-10);

/// Hypergeometric closed form for a tanh profile.
ModeSample tanh_mode(const CoefficientProfile& profile, double t);

/// Same as tanh_mode, also returning the worst 2F1 error estimate used.
ModeSample tanh_mode(const CoefficientProfile& profile, double t, double* error_estimate);

ModeSolution tanh_closed_form(const CoefficientProfile& profile);

/// Incoming plane wave e^{-i w t0} / sqrt(2 m w) for the instantaneous frequency at t0 (Y = 0).
ModeSample plane_wave(const CoefficientProfile& profile, double t0);

struct AlphaCoefficients {
  cdouble plus;
  cdouble minus;
};

/// Late-time amplitudes of the tanh solution on e^{-i wf t} and e^{+i wf t}.
AlphaCoefficients alpha_coefficients(double tau, double omega_i, double omega_f);

/// mu = i Wr{u, v*}, nu = i Wr{u*, v*} with the shared kinetic coefficient X.
BogoliubovPair bogoliubov(const ModeSample& u, const ModeSample& v, double X);
BogoliubovPair bogoliubov(const ModeSolution& u, const ModeSolution& v, double t);

}  // namespace tdosc
