#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "tdosc/errors.hpp"

namespace tdosc {

struct OdeOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  std::size_t max_steps = 5'000'000;
};

struct OdeStats {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Dormand-Prince 5(4) with a PI step controller. The integrator lands exactly on every
/// grid point, so samples carry no interpolation error. `grid` must be non-decreasing and
/// starts at the initial time; the result has one state per grid point.
template <std::size_t N, class Rhs>
std::vector<std::array<double, N>> integrate_dopri5(Rhs&& rhs, std::array<double, N> y0,
                                                    std::span<const double> grid,
                                                    const OdeOptions& opt,
                                                    OdeStats* stats = nullptr) {
  using State = std::array<double, N>;

  // Butcher tableau.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  std::vector<State> out;
  if (grid.empty()) return out;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] >= grid[i - 1])) throw DomainError("integration grid must be non-decreasing");
  }
  out.reserve(grid.size());
  out.push_back(y0);

  auto axpy = [](const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State r = y;
    for (const auto& [coef, k] : terms) {
      if (coef == 0.0) continue;
      for (std::size_t i = 0; i < N; ++i) r[i] += h * coef * (*k)[i];
    }
    return r;
  };

  double t = grid.front();
  State y = y0;
  State k1, k2, k3, k4, k5, k6, k7;
  rhs(t, y, k1);

  const double span_len = grid.back() - grid.front();
  double h = 0.0;
  {
    // Starting step from the scaled derivative size.
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    if (span_len > 0.0) h = std::min(h, span_len);
  }

  constexpr double safety = 0.9, min_factor = 0.2, max_factor = 10.0;
  constexpr double alpha = 0.7 / 5.0, beta = 0.4 / 5.0;
  double err_prev = 1e-4;
  std::size_t steps = 0;
  OdeStats local;

  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double target = grid[g];
    while (t < target) {
      if (++steps > opt.max_steps) throw NumericalError("ODE integrator exceeded the step budget");
      const double remaining = target - t;
      bool last = false;
      double step = h;
      if (step >= remaining) {
        step = remaining;
        last = true;
      }
      const double min_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
      if (step < min_step && !last) {
        throw NumericalError("ODE step size underflow at t = " + std::to_string(t));
      }

      rhs(t + c2 * step, axpy(y, step, {{a21, &k1}}), k2);
      rhs(t + c3 * step, axpy(y, step, {{a31, &k1}, {a32, &k2}}), k3);
      rhs(t + c4 * step, axpy(y, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), k4);
      rhs(t + c5 * step, axpy(y, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), k5);
      rhs(t + step, axpy(y, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), k6);
      State y_new = axpy(y, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const double t_new = last ? target : t + step;
      rhs(t_new, y_new, k7);

      double err = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double e = step * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                 e6 * k6[i] + e7 * k7[i]);
        const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / N);
      if (!std::isfinite(err)) throw NumericalError("non-finite state during ODE integration");

      if (err <= 1.0) {
        double factor = (err == 0.0) ? max_factor
                                     : safety * std::pow(err, -alpha) * std::pow(err_prev, beta);
        factor = std::clamp(factor, min_factor, max_factor);
        err_prev = std::max(err, 1e-4);
        t = t_new;
        y = y_new;
        k1 = k7;
        // A grid-clipped step says nothing about the natural step size.
        if (!last) h = step * factor;
        ++local.accepted;
      } else {
        const double factor = std::max(min_factor, safety * std::pow(err, -alpha));
        h = step * factor;
        ++local.rejected;
      }
    }
    out.push_back(y);
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace tdosc
