#include "mwsim/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace mwsim {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_profile_csv(const ScenarioResult& result, std::ostream& out) {
  out << "# mwsim profile v1\n";
  {
    std::ostringstream hash;
    hash << std::hex << result.provenance.config_hash;
    out << "# config_hash = 0x" << hash.str() << "\n";
  }
  out << "# assumption = " << to_string(result.assumption) << "\n";
  out << "# y_m = " << fmt(result.y_position) << "\n";
  out << "# time_s = " << fmt(result.detector_field.time) << "\n";
  if (result.median_x)
    out << "# median_x_m = " << fmt(*result.median_x) << "\n";
  out << "# born_mass = " << fmt(result.born_profile.total_mass) << "\n";
  out << "# reported_mass = " << fmt(result.reported_profile.total_mass) << "\n";
  out << "# geometry = " << result.provenance.geometry_note << "\n";
  out << "# --- config ---\n";
  std::istringstream cfg(result.provenance.config_text);
  std::string line;
  while (std::getline(cfg, line)) out << "# " << line << "\n";
  out << "# --- end config ---\n";

  out << "x_m,psi_re,psi_im,born_density,reported_density\n";
  const auto& f = result.detector_field;
  for (Eigen::Index i = 0; i < f.grid.size(); ++i) {
    out << fmt(f.grid[i]) << ',' << fmt(f.values[i].real()) << ','
        << fmt(f.values[i].imag()) << ',' << fmt(result.born_profile.values[i])
        << ',' << fmt(result.reported_profile.values[i]) << "\n";
  }
}

void write_profile_csv(const ScenarioResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_profile_csv(result, out);
  out.flush();
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

ProfileCsv read_profile_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  ProfileCsv csv;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      csv.comments.push_back(line);
      continue;
    }
    if (!header_seen) {
      if (line != "x_m,psi_re,psi_im,born_density,reported_density")
        throw std::runtime_error("unexpected CSV header in '" + path + "'");
      header_seen = true;
      continue;
    }
    double v[5];
    int n = std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2],
                        &v[3], &v[4]);
    if (n != 5) throw std::runtime_error("malformed CSV row: " + line);
    csv.x.push_back(v[0]);
    csv.psi_re.push_back(v[1]);
    csv.psi_im.push_back(v[2]);
    csv.born.push_back(v[3]);
    csv.reported.push_back(v[4]);
  }
  return csv;
}

}  // namespace mwsim
