#include "tdosc/mode_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tdosc/errors.hpp"

namespace tdosc {

namespace {

constexpr cdouble I{0.0, 1.0};

nlohmann::json profile_json(const CoefficientProfile& p) {
  nlohmann::json j;
  if (const auto* s = p.static_params()) {
    j = {{"kind", "static"}, {"mass", s->mass}, {"omega0", s->omega0}};
  } else if (const auto* t = p.tanh_params()) {
    const auto f = asymptotic_frequencies(p);
    j = {{"kind", "tanh"},        {"mass", t->mass},     {"omega1", t->omega1},
         {"omega0", t->omega0},   {"tau", t->tau},       {"omega_i", f.initial},
         {"omega_f", f.final}};
  } else {
    const auto* tab = p.tabulated_params();
    j = {{"kind", "tabulated"}, {"samples", tab->t.size()}, {"t_min", tab->t.front()},
         {"t_max", tab->t.back()}};
  }
  return j;
}

std::string representation_name(const ModeSolution& m) {
  switch (m.representation().index()) {
    case 0: return "sampled";
    case 1: return "static_closed_form";
    case 2: return "tanh_hypergeometric";
    default: return "bogoliubov_combination";
  }
}

}  // namespace

Table mode_table(const ModeSolution& mode, std::span<const double> times) {
  Table t{{"t", "re_u", "im_u", "re_u_dot", "im_u_dot", "wronskian_drift"}, {}};
  for (double time : times) {
    const ModeSample s = mode.at(time);
    const double X = mode.profile().at(time).X;
    const double drift = std::abs(wronskian(s.u, s.u_dot, X) - I);
    t.add({time, s.u.real(), s.u.imag(), s.u_dot.real(), s.u_dot.imag(), drift});
  }
  return t;
}

std::string mode_header_json(const ModeSolution& mode) {
  nlohmann::json j;
  j["profile"] = profile_json(mode.profile());
  j["representation"] = representation_name(mode);
  j["columns"] = {"t", "re_u", "im_u", "re_u_dot", "im_u_dot", "wronskian_drift"};
  if (const auto* s = mode.sampled()) {
    j["tolerance"] = s->tol;
    j["max_wronskian_drift"] = s->max_drift;
    j["samples"] = s->times.size();
  } else if (const auto* st = std::get_if<ModeSolution::StaticClosedForm>(&mode.representation())) {
    j["mu"] = {st->pair.mu.real(), st->pair.mu.imag()};
    j["nu"] = {st->pair.nu.real(), st->pair.nu.imag()};
  }
  return j.dump(2) + "\n";
}

ModeSolution read_mode_csv(const CoefficientProfile& profile, std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("empty mode CSV");
  ModeSolution::Sampled s;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double v[5];
    if (!(row >> v[0] >> v[1] >> v[2] >> v[3] >> v[4])) {
      throw DomainError("malformed mode CSV row at line " + std::to_string(lineno));
    }
    const cdouble u{v[1], v[2]}, ud{v[3], v[4]};
    const double d = std::abs(wronskian(u, ud, profile.at(v[0]).X) - I);
    s.times.push_back(v[0]);
    s.u.push_back(u);
    s.u_dot.push_back(ud);
    s.drift.push_back(d);
    s.max_drift = std::max(s.max_drift, d);
  }
  return ModeSolution(profile, std::move(s));
}

ModeSolution read_mode_csv(const CoefficientProfile& profile, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open mode CSV " + path.string());
  return read_mode_csv(profile, in);
}

}  // namespace tdosc
