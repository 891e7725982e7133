#include "tdosc/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tdosc/errors.hpp"

namespace tdosc {

InverseTemperature InverseTemperature::finite(double beta) {
  if (!(beta > 0.0)) throw DomainError("inverse temperature must be positive");
  return InverseTemperature(beta);
}

InverseTemperature InverseTemperature::from_temperature(double temperature) {
  if (temperature == 0.0) return vacuum();
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw DomainError("temperature must be positive and finite");
  }
  return finite(1.0 / temperature);
}

double mean_occupation(InverseTemperature beta, double hbar_omega0) {
  if (!(hbar_omega0 > 0.0)) throw DomainError("hbar_omega0 must be positive");
  if (beta.is_vacuum()) return 0.0;
  const double x = beta.value() * hbar_omega0;
  // e^{-x} / (1 - e^{-x}); no overflow for large x.
  return std::exp(-x) / -std::expm1(-x);
}

double thermal_weight(InverseTemperature beta, double hbar_omega0) {
  if (!(hbar_omega0 > 0.0)) throw DomainError("hbar_omega0 must be positive");
  if (beta.is_vacuum()) return 1.0;
  return std::tanh(0.5 * beta.value() * hbar_omega0);
}

void GaussianState::validate() const {
  if (!mode) throw DomainError("Gaussian state has no mode solution");
  if (!(hbar_omega0 > 0.0) || !std::isfinite(hbar_omega0)) {
    throw DomainError("hbar_omega0 must be positive");
  }
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("hbar must be positive");
}

namespace {

// Mode quantities shared by the moment, ellipse and Wigner routines.
struct ModeFrame {
  ModeSample s;
  Coefficients c;
  cdouble pi;    // (udot - Y u) / X, the momentum partner of u
  double uu;     // |u|^2
  double pipi;   // |pi|^2
  double cross;  // Re(pi conj(u))
};

ModeFrame frame(const GaussianState& state, double t) {
  state.validate();
  ModeFrame f;
  f.s = state.mode->at(t);
  f.c = state.mode->profile().at(t);
  f.pi = (f.s.u_dot - f.c.Y * f.s.u) / f.c.X;
  f.uu = std::norm(f.s.u);
  f.pipi = std::norm(f.pi);
  f.cross = (f.pi * std::conj(f.s.u)).real();
  if (!(f.uu > 0.0)) throw DomainError("mode vanishes at t; ellipse undefined");
  return f;
}

PhasePoint center_from(const GaussianState& state, const ModeFrame& f) {
  const double rh = std::sqrt(state.hbar);
  const double q = rh * 2.0 * (f.s.u * state.z).real();
  const double p = -(f.c.Y / f.c.X) * q + (rh / f.c.X) * 2.0 * (f.s.u_dot * state.z).real();
  return {q, p};
}

double wrap_half_turn(double theta) {
  // Into (-pi/2, pi/2].
  constexpr double pi = std::numbers::pi;
  while (theta <= -0.5 * pi) theta += pi;
  while (theta > 0.5 * pi) theta -= pi;
  return theta;
}

EllipseForm finish(double lp, double lm, double theta, PhasePoint center) {
  EllipseForm e;
  e.lambda_plus = lp;
  e.lambda_minus = lm;
  e.theta = theta;
  e.center = center;
  e.axis_ratio = std::sqrt(lm / lp);
  e.eccentricity = std::sqrt(std::max(0.0, 1.0 - lm / lp));
  return e;
}

}  // namespace

PhasePoint coherent_center(const GaussianState& state, double t) {
  return center_from(state, frame(state, t));
}

Moments covariance(const GaussianState& state, double t) {
  const ModeFrame f = frame(state, t);
  const PhasePoint c = center_from(state, f);
  const double k = state.hbar / thermal_weight(state.beta, state.hbar_omega0);
  return {c.q, c.p, k * f.uu, k * f.pipi, k * f.cross};
}

QuadraticForm h_ellipse(const GaussianState& state, double t) {
  const ModeFrame f = frame(state, t);
  const double w = state.omega0();
  return {w * f.pipi, -2.0 * w * f.cross, w * f.uu};
}

EllipseForm ellipse_canonical(const QuadraticForm& form, double omega0, PhasePoint center) {
  if (!(omega0 > 0.0)) throw DomainError("omega0 must be positive");
  const double a = 2.0 * form.qq / omega0;
  const double b = form.qp / omega0;
  const double c = 2.0 * form.pp / omega0;
  const double det = a * c - b * b;
  if (!(a > 0.0) || !(det > 0.0)) throw DomainError("quadratic form is not positive definite");
  const double half_tr = 0.5 * (a + c);
  const double gap = std::hypot(0.5 * (a - c), b);
  const double lp = half_tr + gap;
  const double lm = det / lp;
  if (gap <= 1e-14 * lp) return finish(lp, lm, 0.0, center);

  // Eigenvector of lambda_plus, taken from the better-conditioned row of (M - lp).
  double vq = b, vp = lp - a;
  if (std::hypot(lp - c, b) > std::hypot(vq, vp)) {
    vq = lp - c;
    vp = b;
  }
  // That vector is p~ = (-sin theta, cos theta).
  const double theta = wrap_half_turn(std::atan2(-vq, vp));
  return finish(lp, lm, theta, center);
}

EllipseForm ellipse_closed_form(const GaussianState& state, double t) {
  const ModeFrame f = frame(state, t);
  // R / |u|^2 generalizes d ln|u| / dt / X to Y != 0.
  const double rate = f.cross / f.uu;
  const double g = f.uu + 1.0 / (4.0 * f.uu) + f.uu * rate * rate;
  const double root = std::sqrt(std::max(0.0, g * g - 1.0));
  const double lp = g + root;
  const double lm = 1.0 / lp;
  const PhasePoint center = center_from(state, f);
  if (root <= 1e-14 * lp) return finish(lp, lm, 0.0, center);
  // tan 2theta = 2 |u|^2 rate / (|u|^2 - 1/(4|u|^2) - |u|^2 rate^2); the quadrant puts the
  // lambda_plus axis on p~.
  const double num = 2.0 * f.uu * rate;
  const double den = f.uu - 1.0 / (4.0 * f.uu) - f.uu * rate * rate;
  const double theta = wrap_half_turn(0.5 * std::atan2(num, den));
  return finish(lp, lm, theta, center);
}

WignerKernel wigner_kernel(const GaussianState& state, double t) {
  const ModeFrame f = frame(state, t);
  const double w = thermal_weight(state.beta, state.hbar_omega0);
  const double k = 2.0 * w / state.hbar;
  WignerKernel kern;
  kern.center = center_from(state, f);
  kern.exponent = {k * f.pipi, -2.0 * k * f.cross, k * f.uu};
  kern.prefactor = w / (std::numbers::pi * state.hbar);
  return kern;
}

double wigner(const GaussianState& state, double t, double q, double p) {
  return wigner_kernel(state, t)(q, p);
}

cdouble density_matrix(const GaussianState& state, double t, double q, double q_prime) {
  const ModeFrame f = frame(state, t);
  const PhasePoint c = center_from(state, f);
  const double k = state.hbar / thermal_weight(state.beta, state.hbar_omega0);
  const double sqq = k * f.uu;
  const double sqp = k * f.cross;
  const double det = sqq * k * f.pipi - sqp * sqp;
  const double hb = state.hbar;

  const double x = q - c.q;
  const double xp = q_prime - c.q;
  const double sum = x + xp;
  const double diff = xp - x;
  const double re = -sum * sum / (8.0 * sqq) - det * diff * diff / (2.0 * sqq * hb * hb);
  const double im = -sqp * sum * diff / (2.0 * sqq * hb) + c.p * (q - q_prime) / hb;
  return std::exp(cdouble{re, im}) / std::sqrt(2.0 * std::numbers::pi * sqq);
}

double nu_from_eccentricities(double e_i, double e_f) {
  if (!(e_i >= 0.0 && e_i < 1.0) || !(e_f >= 0.0 && e_f < 1.0)) {
    throw DomainError("eccentricities must lie in [0, 1)");
  }
  const double si = std::sqrt((1.0 - e_i) * (1.0 + e_i));
  const double sf = std::sqrt((1.0 - e_f) * (1.0 + e_f));
  return std::abs(si - sf) / (2.0 * std::sqrt(si * sf));
}

SqueezingEstimate squeezing_from_ellipses(const EllipseForm& initial, const EllipseForm& final,
                                          double fallback_abs_nu) {
  constexpr double circle = 1e-12;
  const bool round_i = 1.0 - initial.axis_ratio < circle;
  const bool round_f = 1.0 - final.axis_ratio < circle;
  const bool long_q_i = std::abs(initial.theta) <= 0.25 * std::numbers::pi;
  const bool long_q_f = std::abs(final.theta) <= 0.25 * std::numbers::pi;
  if (round_i || round_f || long_q_i == long_q_f) {
    return {nu_from_eccentricities(initial.eccentricity, final.eccentricity), false};
  }
  return {fallback_abs_nu, true};
}

}  // namespace tdosc
