#include "tdosc/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <string>

#include "tdosc/errors.hpp"
#include "tdosc/ode.hpp"

namespace tdosc {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw DomainError("spline needs at least two matching samples");
  for (std::size_t i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw DomainError("spline abscissae must be strictly increasing");
  }
  m_.assign(n, 0.0);
  if (n == 2) return;

  // Tridiagonal solve for interior second derivatives, natural ends.
  std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i] = 2.0 * (h0 + h1);
    upper[i] = h1;
    rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    const double lower = x_[i] - x_[i - 1];
    const double w = lower / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
    if (i == 1) break;
  }
}

std::size_t CubicSpline::interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(std::distance(x_.begin(), it));
  if (i == 0) return 0;
  return std::min(i - 1, x_.size() - 2);
}

double CubicSpline::value(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = interval(x);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - x) / h;
  const double b = (x - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((1.0 - 3.0 * a * a) * m_[i] + (3.0 * b * b - 1.0) * m_[i + 1]) * h / 6.0;
}

CoefficientProfile::CoefficientProfile(Params p) : params_(std::move(p)) {
  if (auto* tab = std::get_if<TabulatedParams>(&params_)) {
    splines_.X = CubicSpline(tab->t, tab->X);
    splines_.Y = CubicSpline(tab->t, tab->Y);
    splines_.Z = CubicSpline(tab->t, tab->Z);
  }
}

CoefficientProfile CoefficientProfile::static_oscillator(double mass, double omega0) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be positive");
  return CoefficientProfile(StaticParams{mass, omega0});
}

CoefficientProfile CoefficientProfile::tanh_sweep(double mass, double omega1, double omega0,
                                                  double tau) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError("tau must be positive");
  if (!(omega0 >= 0.0)) throw DomainError("omega0 must be non-negative");
  if (!(omega1 > omega0) || !std::isfinite(omega1)) {
    throw DomainError("tanh profile needs omega1 > omega0 for a real final frequency");
  }
  return CoefficientProfile(TanhParams{mass, omega1, omega0, tau});
}

CoefficientProfile CoefficientProfile::tanh_from_asymptotes(double mass, double omega_i,
                                                            double omega_f, double tau) {
  if (!(omega_i >= omega_f) || !(omega_f > 0.0)) {
    throw DomainError("tanh profile needs omega_i >= omega_f > 0");
  }
  const double w1sq = 0.5 * (omega_i * omega_i + omega_f * omega_f);
  const double w0sq = 0.5 * (omega_i * omega_i - omega_f * omega_f);
  return tanh_sweep(mass, std::sqrt(w1sq), std::sqrt(w0sq), tau);
}

CoefficientProfile CoefficientProfile::tabulated(std::vector<double> t, std::vector<double> X,
                                                 std::vector<double> Y, std::vector<double> Z) {
  const std::size_t n = t.size();
  if (n < 2) throw DomainError("tabulated profile needs at least two samples");
  if (X.size() != n || Y.size() != n || Z.size() != n) {
    throw DomainError("tabulated profile columns differ in length");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t[i] > t[i - 1])) throw DomainError("tabulated times must be strictly increasing");
  }
  for (double x : X) {
    if (!(x > 0.0)) throw DomainError("tabulated X must be positive");
  }
  return CoefficientProfile(TabulatedParams{std::move(t), std::move(X), std::move(Y), std::move(Z)});
}

CoefficientProfile CoefficientProfile::tabulated_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty profile CSV");
  std::vector<double> t, X, Y, Z;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double v[4];
    if (!(row >> v[0] >> v[1] >> v[2] >> v[3])) {
      throw DomainError("malformed profile CSV row at line " + std::to_string(lineno));
    }
    t.push_back(v[0]);
    X.push_back(v[1]);
    Y.push_back(v[2]);
    Z.push_back(v[3]);
  }
  return tabulated(std::move(t), std::move(X), std::move(Y), std::move(Z));
}

CoefficientProfile CoefficientProfile::tabulated_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open profile CSV " + path.string());
  return tabulated_csv(in);
}

ProfileKind CoefficientProfile::kind() const {
  switch (params_.index()) {
    case 0: return ProfileKind::Static;
    case 1: return ProfileKind::Tanh;
    default: return ProfileKind::Tabulated;
  }
}

std::pair<double, double> CoefficientProfile::domain() const {
  if (auto* tab = tabulated_params()) return {tab->t.front(), tab->t.back()};
  constexpr double inf = std::numeric_limits<double>::infinity();
  return {-inf, inf};
}

namespace {

void require_in_domain(const TabulatedParams& tab, double t) {
  if (!(t >= tab.t.front() && t <= tab.t.back())) {
    throw DomainError("t = " + std::to_string(t) + " outside the tabulated profile range");
  }
}

}  // namespace

Coefficients CoefficientProfile::at(double t) const {
  if (auto* s = static_params()) return {1.0 / s->mass, 0.0, s->mass * s->omega0 * s->omega0};
  if (auto* th = tanh_params()) {
    const double z = th->mass * (th->omega1 * th->omega1 -
                                 th->omega0 * th->omega0 * std::tanh(t / th->tau));
    return {1.0 / th->mass, 0.0, z};
  }
  const auto& tab = std::get<TabulatedParams>(params_);
  require_in_domain(tab, t);
  Coefficients c{splines_.X.value(t), splines_.Y.value(t), splines_.Z.value(t)};
  if (!(c.X > 0.0)) throw DomainError("profile X(t) is not positive at t = " + std::to_string(t));
  return c;
}

CoefficientRates CoefficientProfile::rates(double t) const {
  if (kind() != ProfileKind::Tabulated) return {0.0, 0.0};
  require_in_domain(std::get<TabulatedParams>(params_), t);
  return {splines_.X.derivative(t), splines_.Y.derivative(t)};
}

Coefficients coefficients(const CoefficientProfile& profile, double t) { return profile.at(t); }

AsymptoticFrequencies asymptotic_frequencies(const CoefficientProfile& profile) {
  const TanhParams* th = profile.tanh_params();
  if (!th) throw DomainError("asymptotic frequencies are defined for tanh profiles only");
  const double w1sq = th->omega1 * th->omega1;
  const double w0sq = th->omega0 * th->omega0;
  return {std::sqrt(w1sq + w0sq), std::sqrt(w1sq - w0sq)};
}

ClassicalTrajectory classical_trajectory(const CoefficientProfile& profile, PhasePoint start,
                                         std::span<const double> t_grid, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  ClassicalTrajectory traj;
  traj.times.assign(t_grid.begin(), t_grid.end());
  if (t_grid.empty()) return traj;

  auto rhs = [&profile](double t, const std::array<double, 2>& y, std::array<double, 2>& dy) {
    const Coefficients c = profile.at(t);
    dy[0] = c.X * y[1] + c.Y * y[0];
    dy[1] = -c.Y * y[1] - c.Z * y[0];
  };
  const double scale = std::max({std::abs(start.q), std::abs(start.p), 1e-300});
  OdeOptions opt;
  opt.rtol = tol;
  opt.atol = tol * 1e-3 * scale;
  const auto states = integrate_dopri5<2>(rhs, {start.q, start.p}, t_grid, opt);
  traj.q.reserve(states.size());
  traj.p.reserve(states.size());
  for (const auto& s : states) {
    traj.q.push_back(s[0]);
    traj.p.push_back(s[1]);
  }
  return traj;
}

}  // namespace tdosc
