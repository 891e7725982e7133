#include "tdosc/modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tdosc/errors.hpp"
#include "tdosc/ode.hpp"

namespace tdosc {

namespace {

constexpr cdouble I{0.0, 1.0};

// Second derivative of a mode from the first-order form: udot = X w, wdot = -K u.
cdouble mode_acceleration(const CoefficientProfile& profile, double t, const ModeSample& s) {
  const Coefficients c = profile.at(t);
  const CoefficientRates r = profile.rates(t);
  const double K = c.Z - c.Y * c.Y / c.X + (r.dX * c.Y - c.X * r.dY) / (c.X * c.X);
  return r.dX * s.u_dot / c.X - c.X * K * s.u;
}

ModeSample quintic_hermite(double t0, double t1, const ModeSample& a, cdouble a_dd,
                           const ModeSample& b, cdouble b_dd, double t) {
  const double h = t1 - t0;
  const double s = (t - t0) / h;
  const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
  const double h0 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
  const double h1 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
  const double h2 = 0.5 * s2 - 1.5 * s3 + 1.5 * s4 - 0.5 * s5;
  const double h3 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
  const double h4 = -4.0 * s3 + 7.0 * s4 - 3.0 * s5;
  const double h5 = 0.5 * s3 - s4 + 0.5 * s5;
  const double d0 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
  const double d1 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
  const double d2 = s - 4.5 * s2 + 6.0 * s3 - 2.5 * s4;
  const double d3 = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;
  const double d4 = -12.0 * s2 + 28.0 * s3 - 15.0 * s4;
  const double d5 = 1.5 * s2 - 4.0 * s3 + 2.5 * s4;
  const cdouble u = h0 * a.u + h * h1 * a.u_dot + h * h * h2 * a_dd + h3 * b.u +
                    h * h4 * b.u_dot + h * h * h5 * b_dd;
  const cdouble ud = (d0 * a.u + h * d1 * a.u_dot + h * h * d2 * a_dd + d3 * b.u +
                      h * d4 * b.u_dot + h * h * d5 * b_dd) / h;
  return {u, ud};
}

}  // namespace

BogoliubovPair BogoliubovPair::gauge_fixed() const {
  const double mag = std::abs(mu);
  if (mag == 0.0) return *this;
  const cdouble phase = std::conj(mu) / mag;
  return {mu * phase, nu * phase};
}

BogoliubovPair BogoliubovPair::then(const BogoliubovPair& next) const {
  return {next.mu * mu + next.nu * std::conj(nu), next.mu * nu + next.nu * std::conj(mu)};
}

cdouble wronskian(cdouble u, cdouble u_dot, double X) {
  if (X == 0.0) throw DomainError("Wronskian undefined for X = 0");
  return (u * std::conj(u_dot) - std::conj(u) * u_dot) / X;
}

ModeSample normalize_mode(cdouble u0, cdouble u_dot0, double X) {
  const cdouble wr = wronskian(u0, u_dot0, X);
  const double im = wr.imag();
  if (im == 0.0 || !std::isfinite(im)) {
    throw DomainError("mode initial data has zero Wronskian and spans no basis");
  }
  const double scale = 1.0 / std::sqrt(std::abs(im));
  if (im > 0.0) return {u0 * scale, u_dot0 * scale};
  return {std::conj(u0) * scale, std::conj(u_dot0) * scale};
}

ModeSolution::ModeSolution(CoefficientProfile profile, Representation rep)
    : profile_(std::move(profile)), rep_(std::move(rep)) {
  if (const auto* s = std::get_if<Sampled>(&rep_)) {
    const std::size_t n = s->times.size();
    if (n == 0 || s->u.size() != n || s->u_dot.size() != n) {
      throw DomainError("sampled mode arrays are empty or differ in length");
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (!(s->times[i] > s->times[i - 1])) {
        throw DomainError("sampled mode times must be strictly increasing");
      }
    }
  }
  if (const auto* c = std::get_if<Combination>(&rep_)) {
    if (!c->base) throw DomainError("mode combination without a base solution");
  }
  if (std::holds_alternative<TanhClosedForm>(rep_) && profile_.kind() != ProfileKind::Tanh) {
    throw DomainError("hypergeometric closed form requires a tanh profile");
  }
}

std::pair<double, double> ModeSolution::domain() const {
  if (const auto* s = sampled()) return {s->times.front(), s->times.back()};
  if (const auto* c = std::get_if<Combination>(&rep_)) return c->base->domain();
  return profile_.domain();
}

double ModeSolution::recorded_drift() const {
  if (const auto* s = sampled()) return s->max_drift;
  if (const auto* c = std::get_if<Combination>(&rep_)) return c->base->recorded_drift();
  return 0.0;
}

ModeSample ModeSolution::at(double t) const {
  if (const auto* s = sampled()) {
    const auto& ts = s->times;
    if (!(t >= ts.front() && t <= ts.back())) {
      throw DomainError("t = " + std::to_string(t) + " outside the sampled mode range");
    }
    auto it = std::lower_bound(ts.begin(), ts.end(), t);
    std::size_t j = static_cast<std::size_t>(it - ts.begin());
    if (j < ts.size() && ts[j] == t) return {s->u[j], s->u_dot[j]};
    const std::size_t i = j - 1;
    const ModeSample a{s->u[i], s->u_dot[i]};
    const ModeSample b{s->u[j], s->u_dot[j]};
    return quintic_hermite(ts[i], ts[j], a, mode_acceleration(profile_, ts[i], a), b,
                           mode_acceleration(profile_, ts[j], b), t);
  }
  if (const auto* st = std::get_if<StaticClosedForm>(&rep_)) {
    const double w = st->omega0;
    const double norm = 1.0 / std::sqrt(2.0 * st->mass * w);
    const cdouble em = std::polar(1.0, -w * t);
    const cdouble ep = std::conj(em);
    return {norm * (st->pair.mu * em + st->pair.nu * ep),
            norm * (-I * w) * (st->pair.mu * em - st->pair.nu * ep)};
  }
  if (std::holds_alternative<TanhClosedForm>(rep_)) return tanh_mode(profile_, t);
  const auto& c = std::get<Combination>(rep_);
  const ModeSample b = c.base->at(t);
  const cdouble nuc = std::conj(c.pair.nu);
  return {c.pair.mu * b.u + nuc * std::conj(b.u), c.pair.mu * b.u_dot + nuc * std::conj(b.u_dot)};
}

ModeSolution integrate_mode(const CoefficientProfile& profile, cdouble u0, cdouble u_dot0,
                            std::span<const double> t_grid, double tol) {
  if (t_grid.size() < 2) throw DomainError("mode integration needs at least two grid points");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const auto [lo, hi] = profile.domain();
  if (t_grid.front() < lo || t_grid.back() > hi) {
    throw DomainError("mode integration grid exceeds the profile domain");
  }

  const double X0 = profile.at(t_grid.front()).X;
  const cdouble w0 = u_dot0 / X0;
  auto rhs = [&profile](double t, const std::array<double, 4>& y, std::array<double, 4>& dy) {
    const Coefficients c = profile.at(t);
    const CoefficientRates r = profile.rates(t);
    const double K = c.Z - c.Y * c.Y / c.X + (r.dX * c.Y - c.X * r.dY) / (c.X * c.X);
    dy[0] = c.X * y[2];
    dy[1] = c.X * y[3];
    dy[2] = -K * y[0];
    dy[3] = -K * y[1];
  };
  OdeOptions opt;
  opt.rtol = tol;
  opt.atol = tol * 1e-3 * std::max(std::abs(u0), std::abs(w0));
  const auto states =
      integrate_dopri5<4>(rhs, {u0.real(), u0.imag(), w0.real(), w0.imag()}, t_grid, opt);

  ModeSolution::Sampled s;
  s.tol = tol;
  s.times.assign(t_grid.begin(), t_grid.end());
  s.u.reserve(states.size());
  s.u_dot.reserve(states.size());
  s.drift.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const double X = profile.at(t_grid[i]).X;
    const cdouble u{states[i][0], states[i][1]};
    const cdouble ud = X * cdouble{states[i][2], states[i][3]};
    const double d = std::abs(wronskian(u, ud, X) - I);
    s.u.push_back(u);
    s.u_dot.push_back(ud);
    s.drift.push_back(d);
    s.max_drift = std::max(s.max_drift, d);
  }
  if (s.max_drift > 1e3 * tol) {
    throw NumericalError("Wronskian drift " + std::to_string(s.max_drift) +
                         " exceeds 1e3 * tol; the initial data may be unnormalized");
  }
  return ModeSolution(profile, std::move(s));
}

ModeSolution static_mode(double mass, double omega0, const BogoliubovPair& pair,
                         double tolerance) {
  if (std::abs(pair.residual()) > tolerance) {
    throw DomainError("static mode needs |mu|^2 - |nu|^2 = 1");
  }
  return ModeSolution(CoefficientProfile::static_oscillator(mass, omega0),
                      ModeSolution::StaticClosedForm{mass, omega0, pair});
}

ModeSample tanh_mode(const CoefficientProfile& profile, double t, double* error_estimate) {
  const TanhParams* th = profile.tanh_params();
  if (!th) throw DomainError("tanh_mode needs a tanh profile");
  const auto [wi, wf] = asymptotic_frequencies(profile);
  const double tau = th->tau;
  const cdouble a = -I * (0.5 * tau * (wi + wf));
  const cdouble b = -I * (0.5 * tau * (wi - wf));
  const cdouble c = 1.0 - I * (tau * wi);
  const cdouble pre = std::polar(1.0 / std::sqrt(2.0 * th->mass * wi), -wi * t);
  const double s = 2.0 * t / tau;

  if (s < std::log(std::numeric_limits<double>::min())) {
    if (error_estimate) *error_estimate = 0.0;
    return {pre, -I * wi * pre};
  }
  const Hyp2F1Result F = hyp2f1_negexp(a, b, c, s);
  double err = F.error_estimate;
  cdouble dlog = -I * wi * F.value;
  const cdouble ab = a * b;
  if (ab != 0.0) {
    const Hyp2F1Result G = hyp2f1_negexp(a + 1.0, b + 1.0, c + 1.0, s);
    err = std::max(err, G.error_estimate);
    const double x = -std::exp(s);
    dlog += (2.0 / tau) * x * (ab / c) * G.value;
  }
  if (error_estimate) *error_estimate = err;
  return {pre * F.value, pre * dlog};
}

ModeSample tanh_mode(const CoefficientProfile& profile, double t) {
  return tanh_mode(profile, t, nullptr);
}

ModeSolution tanh_closed_form(const CoefficientProfile& profile) {
  return ModeSolution(profile, ModeSolution::TanhClosedForm{});
}

ModeSample plane_wave(const CoefficientProfile& profile, double t0) {
  const Coefficients c = profile.at(t0);
  if (c.Y != 0.0) throw DomainError("plane-wave initial data assumes Y = 0");
  const double w2 = c.X * c.Z;
  if (!(w2 > 0.0)) throw DomainError("plane-wave initial data needs X Z > 0");
  double w = std::sqrt(w2);
  // A tanh sweep has exact asymptotes; the local frequency would carry a t0-proportional phase error.
  if (profile.tanh_params()) {
    const AsymptoticFrequencies f = asymptotic_frequencies(profile);
    w = t0 <= 0.0 ? f.initial : f.final;
  }
  const cdouble u = std::polar(std::sqrt(c.X / (2.0 * w)), -w * t0);
  return {u, -I * w * u};
}

AlphaCoefficients alpha_coefficients(double tau, double omega_i, double omega_f) {
  if (!(tau > 0.0)) throw DomainError("alpha coefficients need tau > 0");
  if (!(omega_f > 0.0) || !(omega_i >= omega_f)) {
    throw DomainError("alpha coefficients need omega_i >= omega_f > 0");
  }
  const cdouble lg_num = log_gamma(1.0 - I * (omega_i * tau));
  auto alpha = [&](double sign) -> cdouble {
    const cdouble d1 = 1.0 - I * (0.5 * tau * (omega_i + sign * omega_f));
    const cdouble d2 = -I * (0.5 * tau * (omega_i + sign * omega_f));
    if (d2 == 0.0) return 0.0;  // 1/Gamma(0)
    return std::exp(lg_num + log_gamma(-sign * I * (omega_f * tau)) - log_gamma(d1) -
                    log_gamma(d2));
  };
  return {alpha(+1.0), alpha(-1.0)};
}

BogoliubovPair bogoliubov(const ModeSample& u, const ModeSample& v, double X) {
  if (X == 0.0) throw DomainError("Bogoliubov coefficients undefined for X = 0");
  // Wr{f, g} = (g fdot - f gdot) / X
  const cdouble vs = std::conj(v.u), vds = std::conj(v.u_dot);
  const cdouble mu = I * (vs * u.u_dot - u.u * vds) / X;
  const cdouble nu = I * (vs * std::conj(u.u_dot) - std::conj(u.u) * vds) / X;
  return {mu, nu};
}

BogoliubovPair bogoliubov(const ModeSolution& u, const ModeSolution& v, double t) {
  const double Xu = u.profile().at(t).X;
  const double Xv = v.profile().at(t).X;
  if (std::abs(Xu - Xv) > 1e-12 * std::abs(Xu)) {
    throw DomainError("Bogoliubov coefficients need modes sharing the kinetic coefficient X");
  }
  return bogoliubov(u.at(t), v.at(t), Xu);
}

}  // namespace tdosc
