#pragma once

#include <cmath>
#include <limits>
#include <memory>

#include "tdosc/modes.hpp"

namespace tdosc {

/// Inverse temperature; +inf is the vacuum and is kept exact.
class InverseTemperature {
 public:
  static InverseTemperature vacuum() { return InverseTemperature(kInf); }
  static InverseTemperature finite(double beta);
  static InverseTemperature from_temperature(double temperature);

  double value() const { return beta_; }
  bool is_vacuum() const { return beta_ == kInf; }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();
  explicit InverseTemperature(double beta) : beta_(beta) {}
  double beta_;
};

/// Bose-Einstein occupation 1/(e^{beta hbar w0} - 1); exactly 0 for the vacuum.
double mean_occupation(InverseTemperature beta, double hbar_omega0);

/// tanh(beta hbar w0 / 2) = 1 / (1 + 2 nbar); exactly 1 for the vacuum.
double thermal_weight(InverseTemperature beta, double hbar_omega0);

/// Displaced thermal state built on a mode solution.
struct GaussianState {
  std::shared_ptr<const ModeSolution> mode;
  InverseTemperature beta = InverseTemperature::vacuum();
  double hbar_omega0 = 1.0;
  cdouble z;
  double hbar = 1.0;

  /// Throws DomainError unless mode is set and hbar_omega0, hbar > 0.
  void validate() const;
  double omega0() const { return hbar_omega0 / hbar; }
};

struct Moments {
  double q_mean = 0.0;
  double p_mean = 0.0;
  double sigma_qq = 0.0;
  double sigma_pp = 0.0;
  double sigma_qp = 0.0;

  double determinant() const { return sigma_qq * sigma_pp - sigma_qp * sigma_qp; }
};

/// H(q, p) = qq q^2 + qp q p + pp p^2.
struct QuadraticForm {
  double qq = 0.0;
  double qp = 0.0;
  double pp = 0.0;

  double operator()(double q, double p) const { return qq * q * q + qp * q * p + pp * p * p; }
};

/// Canonical geometry of a Wigner contour.
/// The form equals (omega0/2) (lambda_plus p~^2 + lambda_minus q~^2) with
/// q~ = cos(theta) dq + sin(theta) dp, p~ = -sin(theta) dq + cos(theta) dp, theta in (-pi/2, pi/2].
struct EllipseForm {
  double lambda_plus = 1.0;
  double lambda_minus = 1.0;
  double theta = 0.0;
  PhasePoint center;
  double axis_ratio = 1.0;    // sqrt(lambda_min / lambda_max)
  double eccentricity = 0.0;  // sqrt(1 - axis_ratio^2)
};

PhasePoint coherent_center(const GaussianState& state, double t);
Moments covariance(const GaussianState& state, double t);
QuadraticForm h_ellipse(const GaussianState& state, double t);

/// Diagonalizes (2/omega0) * form. Circles report theta = 0.
EllipseForm ellipse_canonical(const QuadraticForm& form, double omega0, PhasePoint center);

/// lambda_pm and theta from the mode's |u|^2 and its logarithmic rate, without an
/// eigen-decomposition. Agrees with ellipse_canonical(h_ellipse(...)).
EllipseForm ellipse_closed_form(const GaussianState& state, double t);

/// Everything needed to evaluate the Wigner function at one time.
struct WignerKernel {
  PhasePoint center;
  QuadraticForm exponent;  // P = prefactor * exp(-exponent(q - qc, p - pc))
  double prefactor = 0.0;

  double operator()(double q, double p) const {
    return prefactor * std::exp(-exponent(q - center.q, p - center.p));
  }
};

WignerKernel wigner_kernel(const GaussianState& state, double t);
double wigner(const GaussianState& state, double t, double q, double p);

/// Position-representation density matrix rho(q, q').
cdouble density_matrix(const GaussianState& state, double t, double q, double q_prime);

/// |nu| from the eccentricities of the initial and final static ellipses.
double nu_from_eccentricities(double e_i, double e_f);

struct SqueezingEstimate {
  double abs_nu = 0.0;
  bool used_fallback = false;  // axis orderings differ; the Wronskian value was used
};

/// Eccentricity route when both ellipses put their long axis along the same coordinate,
/// otherwise `fallback_abs_nu` (normally the direct Bogoliubov value).
SqueezingEstimate squeezing_from_ellipses(const EllipseForm& initial, const EllipseForm& final,
                                          double fallback_abs_nu);

}  // namespace tdosc
