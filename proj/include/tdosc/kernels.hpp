#pragma once

// Data-parallel sampling kernels. Each has a serial reference and an OpenMP version; the two
// produce bit-identical results (fixed per-row reduction order), which the tests check.

#include <cstddef>
#include <span>
#include <vector>

#include "tdosc/gaussian.hpp"

namespace tdosc {

struct GridSpec {
  double q_min = -1.0, q_max = 1.0;
  double p_min = -1.0, p_max = 1.0;
  std::size_t nq = 201, np = 201;

  double q_at(std::size_t i) const;
  double p_at(std::size_t j) const;
  double dq() const { return (q_max - q_min) / static_cast<double>(nq - 1); }
  double dp() const { return (p_max - p_min) / static_cast<double>(np - 1); }
};

/// Box of +- `half_width_sigmas` marginal standard deviations around the state's center.
GridSpec centered_grid(const GaussianState& state, double t, double half_width_sigmas,
                       std::size_t samples);

/// Row-major samples, index = i * np + j for (q_i, p_j).
std::vector<double> wigner_grid_serial(const WignerKernel& kernel, const GridSpec& grid);
std::vector<double> wigner_grid_parallel(const WignerKernel& kernel, const GridSpec& grid);

/// Trapezoid-rule mass, first and central second moments of a sampled Wigner grid.
struct GridMoments {
  double mass = 0.0;
  double q_mean = 0.0, p_mean = 0.0;
  double sigma_qq = 0.0, sigma_pp = 0.0, sigma_qp = 0.0;
};

GridMoments grid_moments_serial(const WignerKernel& kernel, const GridSpec& grid);
GridMoments grid_moments_parallel(const WignerKernel& kernel, const GridSpec& grid);

struct EllipseSample {
  double t = 0.0;
  EllipseForm form;
};

std::vector<EllipseSample> ellipse_track_serial(const GaussianState& state,
                                                std::span<const double> times);
std::vector<EllipseSample> ellipse_track_parallel(const GaussianState& state,
                                                  std::span<const double> times);

}  // namespace tdosc
