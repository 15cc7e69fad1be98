#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mwsim/experiment.hpp"

namespace mwsim {

/// Writes the pinned profile schema: a '#'-prefixed provenance block, then
/// "x_m,psi_re,psi_im,born_density,reported_density" and one row per grid
/// point, 17 significant digits, LF line endings. Byte-identical across runs
/// and worker counts.
void write_profile_csv(const ScenarioResult& result, std::ostream& out);
void write_profile_csv(const ScenarioResult& result, const std::string& path);

/// Row data read back from a profile CSV (for round-trip checks and tooling).
struct ProfileCsv {
  std::vector<std::string> comments;
  std::vector<double> x, psi_re, psi_im, born, reported;
};

ProfileCsv read_profile_csv(const std::string& path);

}  // namespace mwsim
