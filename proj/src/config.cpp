#include "mwsim/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace mwsim {
namespace {

constexpr double kFwhmFactor = 2.3548200450309493;  // 2 sqrt(2 ln 2)

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

struct Document {
  std::map<std::string, Entry> entries;

  const Entry* find(const std::string& key) {
    auto it = entries.find(key);
    if (it == entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Document tokenize(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header '" + line + "'");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty value for key '" + key + "'");
    if (doc.entries.count(key))
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": duplicate key '" + key + "'");
    doc.entries[key] = Entry{value, lineno, false};
  }
  return doc;
}

double get_double(Document& doc, const std::string& key, double def) {
  const Entry* e = doc.find(key);
  if (!e) return def;
  char* end = nullptr;
  const double v = std::strtod(e->value.c_str(), &end);
  if (end == e->value.c_str() || *end != '\0' || !std::isfinite(v))
    throw ConfigError("config line " + std::to_string(e->line) + ": key '" + key +
                      "': malformed number '" + e->value + "'");
  return v;
}

long long get_int(Document& doc, const std::string& key, long long def) {
  const Entry* e = doc.find(key);
  if (!e) return def;
  char* end = nullptr;
  const long long v = std::strtoll(e->value.c_str(), &end, 10);
  if (end == e->value.c_str() || *end != '\0')
    throw ConfigError("config line " + std::to_string(e->line) + ": key '" + key +
                      "': malformed integer '" + e->value + "'");
  return v;
}

std::string get_string(Document& doc, const std::string& key,
                       const std::string& def) {
  const Entry* e = doc.find(key);
  return e ? e->value : def;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Human-unit value h such that h * to_si reproduces the stored SI double
// exactly; nudges by ulps when plain division does not invert the rounding.
double exact_human(double si, double to_si) {
  if (to_si == 1.0) return si;
  const double h0 = si / to_si;
  auto inverts = [&](double h) { return h * to_si == si; };
  if (inverts(h0)) return h0;
  double up = h0, dn = h0;
  for (int i = 0; i < 4; ++i) {
    up = std::nextafter(up, std::numeric_limits<double>::infinity());
    if (inverts(up)) return up;
    dn = std::nextafter(dn, -std::numeric_limits<double>::infinity());
    if (inverts(dn)) return dn;
  }
  return h0;
}

}  // namespace

Assumption assumption_from_string(const std::string& name) {
  if (name == "usual") return Assumption::usual;
  if (name == "classical") return Assumption::classical;
  if (name == "alternative") return Assumption::alternative;
  throw ConfigError("unknown assumption '" + name +
                    "' (expected usual | classical | alternative)");
}

ExperimentConfig parse_config(const std::string& text) {
  Document doc = tokenize(text);
  ExperimentConfig c;

  c.setup.mass = get_double(doc, "setup.mass_kg", 3.84e-26);
  c.setup.hbar = get_double(doc, "setup.hbar_js", kHbarSI);
  c.setup.v_y = get_double(doc, "setup.v_y_m_per_s", 200.0);
  c.setup.n_principal = static_cast<int>(get_int(doc, "setup.n_principal", 60));
  c.setup.lifetime = get_double(doc, "setup.lifetime_ms", 70.0) * 1e-3;

  const double width_mm = get_double(doc, "beam.width_mm", 6.0);
  const std::string conv = get_string(doc, "beam.width_convention", "e2_full");
  if (conv == "e2_full") {
    c.beam.sigma0 = width_mm * 1e-3 / 4.0;
  } else if (conv == "fwhm") {
    c.beam.sigma0 = width_mm * 1e-3 / kFwhmFactor;
  } else if (conv == "sigma") {
    c.beam.sigma0 = width_mm * 1e-3;
  } else {
    throw ConfigError("key 'beam.width_convention': unknown convention '" + conv +
                      "' (expected e2_full | fwhm | sigma)");
  }
  c.beam.center = get_double(doc, "beam.center_um", 0.0) * 1e-6;

  c.geometry.slit_a_width = get_double(doc, "geometry.slit_a_width_um", 100.0) * 1e-6;
  c.geometry.slit_a_center =
      get_double(doc, "geometry.slit_a_center_um", 150.0) * 1e-6;
  c.geometry.grating_slit_width =
      get_double(doc, "geometry.grating_slit_width_um", 0.1) * 1e-6;
  c.geometry.grating_separation =
      get_double(doc, "geometry.grating_separation_um", 0.2) * 1e-6;
  c.geometry.grating_count =
      static_cast<int>(get_int(doc, "geometry.grating_count", 1000));
  c.geometry.grating_center =
      get_double(doc, "geometry.grating_center_um", -150.0) * 1e-6;
  c.d1 = get_double(doc, "geometry.d1_m", 1.0);
  c.d2 = get_double(doc, "geometry.d2_m", 2.0);

  c.detector_halfwidth = get_double(doc, "detector.halfwidth_mm", 4.0) * 1e-3;
  c.detector_points = static_cast<int>(get_int(doc, "detector.points", 4001));
  c.tail_guard_fraction = get_double(doc, "detector.tail_guard_fraction", 1e-6);

  c.assumption = assumption_from_string(get_string(doc, "run.assumption", "usual"));
  c.quad.amplitude_tol = get_double(doc, "run.amplitude_tol", 1e-8);
  c.quad.max_poly_degree =
      static_cast<int>(get_int(doc, "run.amplitude_max_degree", 2));
  c.quad.oracle_max_phase_step =
      get_double(doc, "run.oracle_max_phase_step_rad", 0.2);
  c.quad.oracle_sample_budget = get_int(doc, "run.oracle_sample_budget", 400000000);
  c.quad.workers = static_cast<int>(get_int(doc, "run.workers", 1));
  c.delta_vx = get_double(doc, "run.delta_vx_m_per_s", 0.0);
  c.prominence_fraction = get_double(doc, "run.prominence_fraction", 0.1);

  for (const auto& [key, entry] : doc.entries) {
    if (!entry.used)
      throw ConfigError("config line " + std::to_string(entry.line) +
                        ": unknown key '" + key + "'");
  }

  c.validate();
  return c;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "[setup]\n";
  os << "mass_kg = " << fmt(c.setup.mass) << "\n";
  os << "hbar_js = " << fmt(c.setup.hbar) << "\n";
  os << "v_y_m_per_s = " << fmt(c.setup.v_y) << "\n";
  os << "n_principal = " << c.setup.n_principal << "\n";
  os << "lifetime_ms = " << fmt(exact_human(c.setup.lifetime, 1e-3)) << "\n";
  os << "[beam]\n";
  os << "width_mm = " << fmt(exact_human(c.beam.sigma0, 1e-3)) << "\n";
  os << "width_convention = sigma\n";
  os << "center_um = " << fmt(exact_human(c.beam.center, 1e-6)) << "\n";
  os << "[geometry]\n";
  os << "slit_a_width_um = " << fmt(exact_human(c.geometry.slit_a_width, 1e-6))
     << "\n";
  os << "slit_a_center_um = " << fmt(exact_human(c.geometry.slit_a_center, 1e-6))
     << "\n";
  os << "grating_slit_width_um = "
     << fmt(exact_human(c.geometry.grating_slit_width, 1e-6)) << "\n";
  os << "grating_separation_um = "
     << fmt(exact_human(c.geometry.grating_separation, 1e-6)) << "\n";
  os << "grating_count = " << c.geometry.grating_count << "\n";
  os << "grating_center_um = " << fmt(exact_human(c.geometry.grating_center, 1e-6))
     << "\n";
  os << "d1_m = " << fmt(c.d1) << "\n";
  os << "d2_m = " << fmt(c.d2) << "\n";
  os << "[detector]\n";
  os << "halfwidth_mm = " << fmt(exact_human(c.detector_halfwidth, 1e-3)) << "\n";
  os << "points = " << c.detector_points << "\n";
  os << "tail_guard_fraction = " << fmt(c.tail_guard_fraction) << "\n";
  os << "[run]\n";
  os << "assumption = " << to_string(c.assumption) << "\n";
  os << "amplitude_tol = " << fmt(c.quad.amplitude_tol) << "\n";
  os << "amplitude_max_degree = " << c.quad.max_poly_degree << "\n";
  os << "oracle_max_phase_step_rad = " << fmt(c.quad.oracle_max_phase_step) << "\n";
  os << "oracle_sample_budget = " << c.quad.oracle_sample_budget << "\n";
  os << "delta_vx_m_per_s = " << fmt(c.delta_vx) << "\n";
  os << "prominence_fraction = " << fmt(c.prominence_fraction) << "\n";
  os << "workers = " << c.quad.workers << "\n";
  return os.str();
}

std::uint64_t config_hash(const std::string& canonical_text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char ch : canonical_text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace mwsim
