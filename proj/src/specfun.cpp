#include "tdosc/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "tdosc/errors.hpp"

namespace tdosc {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxTerms = 100'000;

bool is_nonpositive_integer(cdouble z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

bool is_integer(cdouble z) { return z.imag() == 0.0 && z.real() == std::floor(z.real()); }

// Stirling series for |z| large, Re z > 0.
cdouble stirling(cdouble z) {
  // B_{2k} / (2k (2k-1))
  static constexpr std::array<double, 10> coef = {
      1.0 / 12.0,          -1.0 / 360.0,          1.0 / 1260.0,       -1.0 / 1680.0,
      1.0 / 1188.0,        -691.0 / 360360.0,     1.0 / 156.0,        -3617.0 / 122400.0,
      43867.0 / 244188.0,  -174611.0 / 125400.0};
  const cdouble inv = 1.0 / z;
  const cdouble inv2 = inv * inv;
  cdouble sum = 0.0;
  cdouble p = inv;
  for (double c : coef) {
    sum += c * p;
    p *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + sum;
}

}  // namespace

cdouble log_gamma(cdouble z) {
  if (is_nonpositive_integer(z)) throw DomainError("log_gamma evaluated at a pole");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("log_gamma needs a finite argument");
  }
  // Shift upward with log Gamma(z) = log Gamma(z + n) - sum log(z + k). Principal logs of
  // z + k keep the result on the branch continuous from the positive real axis.
  constexpr double kStirlingRadius = 20.0;
  cdouble shift = 0.0;
  cdouble w = z;
  while (w.real() < 0.5 || std::abs(w) < kStirlingRadius) {
    shift += std::log(w);
    w += 1.0;
  }
  return stirling(w) - shift;
}

namespace {

struct SeriesSum {
  cdouble value;
  double error;
  std::size_t terms;
};

// Power series of 2F1 at |x| <= 1 with plateau-guarded termination.
SeriesSum power_series(cdouble a, cdouble b, cdouble c, double x, double target) {
  cdouble term = 1.0;
  cdouble sum = 1.0;
  double abs_sum = 1.0;
  int quiet = 0;
  std::size_t n = 0;
  const double stop = target / 10.0;
  while (true) {
    if (n >= kMaxTerms) throw NumericalError("2F1 series did not converge within the term cap");
    const double nn = static_cast<double>(n);
    term *= (a + nn) * (b + nn) / ((c + nn) * (nn + 1.0)) * x;
    ++n;
    sum += term;
    abs_sum += std::abs(term);
    const double scale = std::abs(sum);
    if (std::abs(term) <= stop * scale || term == 0.0) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
    if (!std::isfinite(scale)) throw NumericalError("2F1 series overflowed");
  }
  const double mag = std::max(std::abs(sum), std::numeric_limits<double>::min());
  const double roundoff = 4.0 * kEps * abs_sum / mag;
  const double truncation = std::abs(term) / mag;
  return {sum, std::max(roundoff, truncation), n};
}

cdouble gamma_ratio(cdouble n1, cdouble n2, cdouble d1, cdouble d2) {
  // Gamma(n1) Gamma(n2) / (Gamma(d1) Gamma(d2)); 1/Gamma at a pole is zero.
  if (is_nonpositive_integer(d1) || is_nonpositive_integer(d2)) return 0.0;
  return std::exp(log_gamma(n1) + log_gamma(n2) - log_gamma(d1) - log_gamma(d2));
}

Hyp2F1Result evaluate(cdouble a, cdouble b, cdouble c, double x, double log_neg_x,
                      double target) {
  if (is_nonpositive_integer(c)) throw DomainError("2F1 parameter c is a non-positive integer");
  if (x > 0.0) throw DomainError("2F1 evaluation is restricted to x <= 0");
  if (!(target > 0.0)) throw DomainError("2F1 target precision must be positive");

  Hyp2F1Result r;
  if (x == 0.0) {
    r.value = 1.0;
    return r;
  }

  // Terminating series: a polynomial, exact at any x.
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) {
    const auto s = power_series(a, b, c, x, target);
    return {s.value, s.error, s.terms, Hyp2F1Route::Direct};
  }

  if (x >= -0.5) {
    const auto s = power_series(a, b, c, x, target);
    return {s.value, s.error, s.terms, Hyp2F1Route::Direct};
  }

  if (x >= -2.0) {
    // Pfaff: 2F1(a,b;c;x) = (1-x)^{-a} 2F1(a, c-b; c; x/(x-1)), argument in (1/3, 2/3].
    const double w = x / (x - 1.0);
    const auto s = power_series(a, c - b, c, w, target);
    const cdouble pre = std::exp(-a * std::log1p(-x));
    return {pre * s.value, s.error, s.terms, Hyp2F1Route::Pfaff};
  }

  if (is_integer(a - b)) {
    return hyp2f1_recentered({a, b, c, x, target});
  }

  // Inversion x -> 1/x:
  //   2F1 = G1 (-x)^{-a} 2F1(a, a-c+1; a-b+1; 1/x) + G2 (-x)^{-b} 2F1(b, b-c+1; b-a+1; 1/x)
  const double y = 1.0 / x;
  const auto s1 = power_series(a, a - c + 1.0, a - b + 1.0, y, target);
  const auto s2 = power_series(b, b - c + 1.0, b - a + 1.0, y, target);
  const cdouble g1 = gamma_ratio(c, b - a, b, c - a);
  const cdouble g2 = gamma_ratio(c, a - b, a, c - b);
  const cdouble t1 = g1 * std::exp(-a * log_neg_x) * s1.value;
  const cdouble t2 = g2 * std::exp(-b * log_neg_x) * s2.value;
  r.value = t1 + t2;
  r.route = Hyp2F1Route::Inversion;
  r.terms = s1.terms + s2.terms;
  const double mag = std::max(std::abs(r.value), std::numeric_limits<double>::min());
  // log_gamma error ~1e-14 per factor, amplified by cancellation between the two branches.
  const double gamma_err = 1e-14;
  r.error_estimate = ((s1.error + gamma_err) * std::abs(t1) + (s2.error + gamma_err) * std::abs(t2)) / mag;
  return r;
}

}  // namespace

Hyp2F1Result hyp2f1_detailed(const Hyp2F1Request& req) {
  const double log_neg_x = req.x < 0.0 ? std::log(-req.x) : 0.0;
  return evaluate(req.a, req.b, req.c, req.x, log_neg_x, req.target_precision);
}

Hyp2F1Result hyp2f1_negexp(cdouble a, cdouble b, cdouble c, double log_neg_x,
                           double target_precision) {
  if (log_neg_x > 700.0) throw DomainError("2F1 argument magnitude too large");
  const double x = -std::exp(log_neg_x);
  return evaluate(a, b, c, x, log_neg_x, target_precision);
}

cdouble hyp2f1(const Hyp2F1Request& req) { return hyp2f1_detailed(req).value; }

Hyp2F1Result hyp2f1_recentered(const Hyp2F1Request& req) {
  const cdouble a = req.a, b = req.b, c = req.c;
  if (is_nonpositive_integer(c)) throw DomainError("2F1 parameter c is a non-positive integer");
  if (req.x > 0.0) throw DomainError("2F1 evaluation is restricted to x <= 0");
  const double target = req.target_precision;

  if (req.x >= -0.5) {
    const auto s = power_series(a, b, c, req.x, target);
    return {s.value, s.error, s.terms, Hyp2F1Route::Direct};
  }

  // Start at x0 = -1/2 with value and derivative from the defining series.
  double x0 = -0.5;
  auto f = power_series(a, b, c, x0, target);
  auto df = power_series(a + 1.0, b + 1.0, c + 1.0, x0, target);
  cdouble value = f.value;
  cdouble deriv = a * b / c * df.value;
  double err = std::max(f.error, df.error);
  std::size_t terms = f.terms + df.terms;

  // Taylor coefficients around x0 from x(1-x)F'' + [c-(a+b+1)x]F' - ab F = 0, stepping
  // by at most half the distance to the singular point at 0.
  const cdouble ab = a * b;
  const cdouble apb1 = a + b + 1.0;
  while (x0 > req.x) {
    const double h = std::max(req.x - x0, 0.5 * x0);
    const double p0 = x0 * (1.0 - x0);
    const double p1 = 1.0 - 2.0 * x0;
    const cdouble q0 = c - apb1 * x0;
    cdouble cn = value;       // c_n
    cdouble cn1 = deriv;      // c_{n+1}
    cdouble sum = value + deriv * h;
    cdouble dsum = deriv;
    double hpow = h;          // h^{n+1}
    double abs_sum = std::abs(value) + std::abs(deriv * h);
    int quiet = 0;
    for (std::size_t n = 0;; ++n) {
      if (n >= kMaxTerms) throw NumericalError("2F1 recentering series did not converge");
      const double nn = static_cast<double>(n);
      const cdouble cn2 = -((p1 * nn + q0) * (nn + 1.0) * cn1 +
                            (-nn * (nn - 1.0) - apb1 * nn - ab) * cn) /
                          (p0 * (nn + 2.0) * (nn + 1.0));
      const double hpow_next = hpow * h;
      const cdouble term = cn2 * hpow_next;
      sum += term;
      dsum += (nn + 2.0) * cn2 * hpow;
      abs_sum += std::abs(term);
      ++terms;
      if (std::abs(term) <= target / 10.0 * std::abs(sum)) {
        if (++quiet >= 3) break;
      } else {
        quiet = 0;
      }
      cn = cn1;
      cn1 = cn2;
      hpow = hpow_next;
    }
    err += 4.0 * kEps * abs_sum / std::max(std::abs(sum), std::numeric_limits<double>::min());
    value = sum;
    deriv = dsum;
    x0 += h;
    if (x0 - req.x < 1e-15 * std::abs(req.x)) x0 = req.x;
  }
  return {value, err, terms, Hyp2F1Route::Recentered};
}

}  // namespace tdosc
