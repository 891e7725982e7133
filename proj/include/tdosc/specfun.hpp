#pragma once

#include <complex>
#include <cstddef>

namespace tdosc {

using cdouble = std::complex<double>;

/// Principal branch of log Gamma(z), continuous off the non-positive real axis.
/// Throws DomainError at the poles z = 0, -1, -2, ...
cdouble log_gamma(cdouble z);

/// Default relative accuracy goal for 2F1 evaluations.
inline constexpr double kHyp2F1Precision = 1e-14;

/// Parameters for Gauss 2F1(a, b; c; x) restricted to real x <= 0.
struct Hyp2F1Request {
  cdouble a;
  cdouble b;
  cdouble c;
  double x = 0.0;
  double target_precision = kHyp2F1Precision;
};

enum class Hyp2F1Route { Direct, Pfaff, Inversion, Recentered };

struct Hyp2F1Result {
  cdouble value;
  double error_estimate = 0.0;  // relative, includes cancellation in the summed terms
  std::size_t terms = 0;
  Hyp2F1Route route = Hyp2F1Route::Direct;
};

/// Evaluates 2F1 and reports how it was done. Throws DomainError for x > 0 or c a
/// non-positive integer, NumericalError when a series fails to converge.
Hyp2F1Result hyp2f1_detailed(const Hyp2F1Request& req);

/// Same as hyp2f1_detailed, with x = -exp(log_neg_x); avoids overflow for very negative x.
Hyp2F1Result hyp2f1_negexp(cdouble a, cdouble b, cdouble c, double log_neg_x,
                           double target_precision = kHyp2F1Precision);

cdouble hyp2f1(const Hyp2F1Request& req);

/// Analytic continuation by Taylor recentering of the hypergeometric ODE along the negative
/// axis. Works for any parameters (no connection-formula degeneracies) but is slower.
Hyp2F1Result hyp2f1_recentered(const Hyp2F1Request& req);

}  // namespace tdosc
