#include <algorithm>

#include "tdosc/errors.hpp"
#include "tdosc/scenario.hpp"

namespace tdosc {

namespace {

constexpr std::string_view kStaticVacuum = R"(name: static_vacuum
profile: {kind: static, mass: 1.0, omega0: 1.0}
mode: {kind: static, mu: 1.0, nu: 0.0}
state: {beta: inf, z: 0.0}
grid: {start: 0.0, stop: 6.283185307179586, steps: 201}
outputs: [mode, trajectory, moments, ellipse_track, wigner_grid, bogoliubov]
wigner: {times: [0.0]}
output: {dir: out/static_vacuum}
)";

constexpr std::string_view kStaticThermal = R"(name: static_thermal
profile: {kind: static, mass: 1.0, omega0: 1.0}
mode: {kind: static, mu: 1.0, nu: 0.0}
state: {beta: 1.0, z: [0.8, -0.3]}
grid: {start: 0.0, stop: 6.283185307179586, steps: 201}
outputs: [trajectory, moments, ellipse_track, wigner_grid]
wigner: {times: [0.0, 1.5707963267948966]}
output: {dir: out/static_thermal}
)";

constexpr std::string_view kEpicycle = R"(name: epicycle
# Squeezed thermal state of a static oscillator: the contour ellipse keeps its area,
# rides the classical orbit and rotates with period pi/omega0.
profile: {kind: static, mass: 1.0, omega0: 1.0}
mode: {kind: static, nu: [0.4, 0.3]}
state: {beta: 2.0, z: [1.2, 0.4]}
grid: {start: 0.0, stop: 12.566370614359172, steps: 1000}
outputs: [trajectory, moments, ellipse_track, wigner_grid]
wigner: {times: [0.0, 0.7853981633974483, 1.5707963267948966]}
output: {dir: out/epicycle}
)";

constexpr std::string_view kTanhBenchmark = R"(name: tanh_benchmark
# Frequency sweep omega_i = 2 -> omega_f = 1 (omega1^2 = 2.5, omega0^2 = 1.5) over tau = 2.
# The mode starts as the incoming plane wave at -8 tau and is integrated numerically.
profile: {kind: tanh, mass: 1.0, omega_i: 2.0, omega_f: 1.0, tau: 2.0}
mode: {kind: initial, plane_wave: true}
state: {beta: inf, z: [0.5, 0.0]}
grid: {start: -16.0, stop: 16.0, steps: 401}
outputs: [mode, trajectory, moments, ellipse_track, bogoliubov]
wigner: {times: [0.0]}
tolerances: {ode: 1.0e-9}
output: {dir: out/tanh_benchmark}
)";

constexpr std::string_view kInvariantDemo = R"(name: invariant_demo
# General quadratic invariant (A, B, D, E) reduced to canonical form; the canonicalizing
# Bogoliubov pair selects the mode and delta fixes the displacement z = -delta / hbar_omega0.
profile: {kind: static, mass: 1.0, omega0: 1.0}
mode: {kind: static, mu: 1.0, nu: 0.0}
invariant: {A: [3.0, 0.0], B: 5.0, D: [1.0, 0.5], E: 0.0, beta: 0.5}
grid: {start: 0.0, stop: 6.283185307179586, steps: 400}
outputs: [trajectory, moments, ellipse_track, wigner_grid]
wigner: {times: [0.0]}
output: {dir: out/invariant_demo}
)";

}  // namespace

const std::vector<PresetInfo>& presets() {
  static const std::vector<PresetInfo> list = {
      {"static_vacuum", "Static oscillator ground state (closed form)", kStaticVacuum},
      {"static_thermal", "Displaced thermal state of a static oscillator", kStaticThermal},
      {"epicycle", "Squeezed displaced thermal state: rotating ellipse on a classical orbit",
       kEpicycle},
      {"tanh_benchmark", "tanh frequency sweep, ODE mode vs hypergeometric closed form",
       kTanhBenchmark},
      {"invariant_demo", "Canonicalization of a general quadratic invariant", kInvariantDemo},
  };
  return list;
}

ScenarioConfig load_preset(std::string_view name) {
  const auto& list = presets();
  auto it = std::find_if(list.begin(), list.end(), [&](const PresetInfo& p) { return p.name == name; });
  if (it == list.end()) throw ConfigError("preset", 0, "unknown preset '" + std::string(name) + "'");
  return parse_config_text(it->yaml, ".");
}

}  // namespace tdosc
