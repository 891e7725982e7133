// Serial reference kernels vs their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>
#include <vector>

#include "tdosc/kernels.hpp"
#include "tdosc/runner.hpp"

using namespace tdosc;

namespace {

const GaussianState& epicycle_state() {
  static const Pipeline p = build_pipeline(load_preset("epicycle"));
  return p.state;
}

const GaussianState& tanh_state() {
  static const Pipeline p = [] {
    ScenarioConfig c = load_preset("tanh_benchmark");
    c.mode.kind = ModeSpec::Kind::Tanh;
    return build_pipeline(c);
  }();
  return p.state;
}

std::vector<double> times(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

template <std::vector<double> (*Fn)(const WignerKernel&, const GridSpec&)>
void BM_WignerGrid(benchmark::State& st) {
  const GaussianState& s = epicycle_state();
  const auto n = static_cast<std::size_t>(st.range(0));
  const GridSpec g = centered_grid(s, 0.3, 5.0, n);
  const WignerKernel k = wigner_kernel(s, 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(k, g));
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * n * n));
}

template <GridMoments (*Fn)(const WignerKernel&, const GridSpec&)>
void BM_GridMoments(benchmark::State& st) {
  const GaussianState& s = epicycle_state();
  const auto n = static_cast<std::size_t>(st.range(0));
  const GridSpec g = centered_grid(s, 0.3, 5.0, n);
  const WignerKernel k = wigner_kernel(s, 0.3);
  for (auto _ : st) benchmark::DoNotOptimize(Fn(k, g));
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * n * n));
}

// The tanh closed form makes each ellipse sample cost a pair of 2F1 evaluations.
template <std::vector<EllipseSample> (*Fn)(const GaussianState&, std::span<const double>)>
void BM_EllipseTrack(benchmark::State& st) {
  const GaussianState& s = tanh_state();
  const auto ts = times(-16.0, 16.0, static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(s, ts));
  st.SetItemsProcessed(static_cast<int64_t>(st.iterations() * ts.size()));
}

}  // namespace

BENCHMARK(BM_WignerGrid<wigner_grid_serial>)->Name("wigner_grid/serial")->Arg(201)->Arg(801);
BENCHMARK(BM_WignerGrid<wigner_grid_parallel>)->Name("wigner_grid/parallel")->Arg(201)->Arg(801)->UseRealTime();
BENCHMARK(BM_GridMoments<grid_moments_serial>)->Name("grid_moments/serial")->Arg(201)->Arg(801);
BENCHMARK(BM_GridMoments<grid_moments_parallel>)->Name("grid_moments/parallel")->Arg(201)->Arg(801)->UseRealTime();
BENCHMARK(BM_EllipseTrack<ellipse_track_serial>)->Name("ellipse_track/serial")->Arg(401)->Arg(4001);
BENCHMARK(BM_EllipseTrack<ellipse_track_parallel>)->Name("ellipse_track/parallel")->Arg(401)->Arg(4001)->UseRealTime();

BENCHMARK_MAIN();
