#include "tdosc/kernels.hpp"

#include <array>
#include <cmath>
#include <exception>

#include "tdosc/errors.hpp"
#include "tdosc/parallel.hpp"

namespace tdosc {

double GridSpec::q_at(std::size_t i) const {
  return nq == 1 ? q_min : q_min + (q_max - q_min) * static_cast<double>(i) / static_cast<double>(nq - 1);
}

double GridSpec::p_at(std::size_t j) const {
  return np == 1 ? p_min : p_min + (p_max - p_min) * static_cast<double>(j) / static_cast<double>(np - 1);
}

GridSpec centered_grid(const GaussianState& state, double t, double half_width_sigmas,
                       std::size_t samples) {
  if (samples < 2) throw DomainError("grid needs at least two samples per axis");
  if (!(half_width_sigmas > 0.0)) throw DomainError("grid half width must be positive");
  const Moments m = covariance(state, t);
  const double wq = half_width_sigmas * std::sqrt(m.sigma_qq);
  const double wp = half_width_sigmas * std::sqrt(m.sigma_pp);
  return {m.q_mean - wq, m.q_mean + wq, m.p_mean - wp, m.p_mean + wp, samples, samples};
}

namespace {

void check_grid(const GridSpec& g) {
  if (g.nq < 2 || g.np < 2) throw DomainError("grid needs at least two samples per axis");
  if (!(g.q_max > g.q_min) || !(g.p_max > g.p_min)) throw DomainError("grid bounds are empty");
}

void fill_row(const WignerKernel& k, const GridSpec& g, std::size_t i, double* row) {
  const double q = g.q_at(i);
  for (std::size_t j = 0; j < g.np; ++j) row[j] = k(q, g.p_at(j));
}

double trapezoid_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 0.5 : 1.0; }

// Weighted sums of 1, q, p, q^2, p^2, qp along one row (coordinates relative to the center).
using RowSums = std::array<double, 6>;

RowSums row_sums(const WignerKernel& k, const GridSpec& g, std::size_t i) {
  RowSums s{};
  const double q = g.q_at(i);
  const double dq = q - k.center.q;
  for (std::size_t j = 0; j < g.np; ++j) {
    const double p = g.p_at(j);
    const double dp = p - k.center.p;
    const double w = trapezoid_weight(j, g.np) * k(q, p);
    s[0] += w;
    s[1] += w * dq;
    s[2] += w * dp;
    s[3] += w * dq * dq;
    s[4] += w * dp * dp;
    s[5] += w * dq * dp;
  }
  return s;
}

GridMoments combine(const WignerKernel& k, const GridSpec& g, const std::vector<RowSums>& rows) {
  RowSums tot{};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double w = trapezoid_weight(i, g.nq);
    for (std::size_t c = 0; c < tot.size(); ++c) tot[c] += w * rows[i][c];
  }
  const double cell = g.dq() * g.dp();
  GridMoments m;
  m.mass = tot[0] * cell;
  const double mq = tot[1] / tot[0];
  const double mp = tot[2] / tot[0];
  m.q_mean = k.center.q + mq;
  m.p_mean = k.center.p + mp;
  // Central moments of the (unnormalized) quadrature measure.
  m.sigma_qq = tot[3] * cell - m.mass * mq * mq;
  m.sigma_pp = tot[4] * cell - m.mass * mp * mp;
  m.sigma_qp = tot[5] * cell - m.mass * mq * mp;
  return m;
}

}  // namespace

std::vector<double> wigner_grid_serial(const WignerKernel& kernel, const GridSpec& grid) {
  check_grid(grid);
  std::vector<double> out(grid.nq * grid.np);
  for (std::size_t i = 0; i < grid.nq; ++i) fill_row(kernel, grid, i, out.data() + i * grid.np);
  return out;
}

std::vector<double> wigner_grid_parallel(const WignerKernel& kernel, const GridSpec& grid) {
  check_grid(grid);
  std::vector<double> out(grid.nq * grid.np);
  const long long nq = static_cast<long long>(grid.nq);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < nq; ++i) {
    const auto row = static_cast<std::size_t>(i);
    fill_row(kernel, grid, row, out.data() + row * grid.np);
  }
  return out;
}

GridMoments grid_moments_serial(const WignerKernel& kernel, const GridSpec& grid) {
  check_grid(grid);
  std::vector<RowSums> rows(grid.nq);
  for (std::size_t i = 0; i < grid.nq; ++i) rows[i] = row_sums(kernel, grid, i);
  return combine(kernel, grid, rows);
}

GridMoments grid_moments_parallel(const WignerKernel& kernel, const GridSpec& grid) {
  check_grid(grid);
  std::vector<RowSums> rows(grid.nq);
  const long long nq = static_cast<long long>(grid.nq);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < nq; ++i) {
    rows[static_cast<std::size_t>(i)] = row_sums(kernel, grid, static_cast<std::size_t>(i));
  }
  return combine(kernel, grid, rows);
}

std::vector<EllipseSample> ellipse_track_serial(const GaussianState& state,
                                                std::span<const double> times) {
  std::vector<EllipseSample> out;
  out.reserve(times.size());
  const double w = state.omega0();
  for (double t : times) {
    out.push_back({t, ellipse_canonical(h_ellipse(state, t), w, coherent_center(state, t))});
  }
  return out;
}

std::vector<EllipseSample> ellipse_track_parallel(const GaussianState& state,
                                                  std::span<const double> times) {
  std::vector<EllipseSample> out(times.size());
  const double w = state.omega0();
  const long long n = static_cast<long long>(times.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      const double t = times[k];
      out[k] = {t, ellipse_canonical(h_ellipse(state, t), w, coherent_center(state, t))};
    } catch (...) {
#pragma omp critical(tdosc_track_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tdosc
