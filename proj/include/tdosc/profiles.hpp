#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace tdosc {

// Coefficients of H = X p^2/2 + Y (pq + qp)/2 + Z q^2/2.
struct Coefficients {
  double X = 0.0;
  double Y = 0.0;
  double Z = 0.0;
};

// Time derivatives of the kinetic and cross coefficients; the mode equation needs both.
struct CoefficientRates {
  double dX = 0.0;
  double dY = 0.0;
};

enum class ProfileKind { Static, Tanh, Tabulated };

// Natural cubic spline on a strictly increasing grid.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double value(double x) const;
  double derivative(double x) const;

 private:
  std::size_t interval(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

struct StaticParams {
  double mass;
  double omega0;
};

struct TanhParams {
  double mass;
  double omega1;
  double omega0;
  double tau;
};

struct TabulatedParams {
  std::vector<double> t;
  std::vector<double> X, Y, Z;
};

struct AsymptoticFrequencies {
  double initial;  // t -> -inf
  double final;    // t -> +inf
};

/// Time-dependent oscillator coefficients. Immutable after construction.
class CoefficientProfile {
 public:
  static CoefficientProfile static_oscillator(double mass, double omega0);
  static CoefficientProfile tanh_sweep(double mass, double omega1, double omega0, double tau);
  /// Same tanh sweep, parameterized by its asymptotic frequencies.
  static CoefficientProfile tanh_from_asymptotes(double mass, double omega_i, double omega_f,
                                                 double tau);
  static CoefficientProfile tabulated(std::vector<double> t, std::vector<double> X,
                                      std::vector<double> Y, std::vector<double> Z);
  /// CSV with header `t,X,Y,Z`.
  static CoefficientProfile tabulated_csv(std::istream& in);
  static CoefficientProfile tabulated_csv(const std::filesystem::path& path);

  ProfileKind kind() const;

  /// Throws DomainError outside the tabulated range or where X <= 0.
  Coefficients at(double t) const;
  CoefficientRates rates(double t) const;

  /// Closed interval where the profile is defined (infinite for analytic kinds).
  std::pair<double, double> domain() const;

  const StaticParams* static_params() const { return std::get_if<StaticParams>(&params_); }
  const TanhParams* tanh_params() const { return std::get_if<TanhParams>(&params_); }
  const TabulatedParams* tabulated_params() const {
    return std::get_if<TabulatedParams>(&params_);
  }

 private:
  struct Splines {
    CubicSpline X, Y, Z;
  };

  using Params = std::variant<StaticParams, TanhParams, TabulatedParams>;
  explicit CoefficientProfile(Params p);

  Params params_;
  Splines splines_;
};

Coefficients coefficients(const CoefficientProfile& profile, double t);

/// (omega_i, omega_f) of a tanh sweep. Throws DomainError for other kinds.
AsymptoticFrequencies asymptotic_frequencies(const CoefficientProfile& profile);

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

struct ClassicalTrajectory {
  std::vector<double> times;
  std::vector<double> q;
  std::vector<double> p;
};

/// Integrates qdot = X p + Y q, pdot = -Y p - Z q from (q0, p0) at t_grid[0].
ClassicalTrajectory classical_trajectory(const CoefficientProfile& profile, PhasePoint start,
                                         std::span<const double> t_grid, double tol);

}  // namespace tdosc
