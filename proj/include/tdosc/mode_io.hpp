#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include "tdosc/modes.hpp"
#include "tdosc/table.hpp"

namespace tdosc {

/// Columns t, re_u, im_u, re_u_dot, im_u_dot, wronskian_drift.
Table mode_table(const ModeSolution& mode, std::span<const double> times);

/// JSON header describing the profile, representation and tolerances of a serialized mode.
std::string mode_header_json(const ModeSolution& mode);

/// Reads a mode CSV back as a sampled solution over `profile`. The data is taken as is;
/// normalization is not enforced, so invariant checks can flag corrupted files.
ModeSolution read_mode_csv(const CoefficientProfile& profile, std::istream& in);
ModeSolution read_mode_csv(const CoefficientProfile& profile, const std::filesystem::path& path);

}  // namespace tdosc
