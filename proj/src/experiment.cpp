#include "mwsim/experiment.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "mwsim/config.hpp"

namespace mwsim {

std::string to_string(Assumption a) {
  switch (a) {
    case Assumption::usual: return "usual";
    case Assumption::classical: return "classical";
    case Assumption::alternative: return "alternative";
  }
  return "?";
}

ArrayXd ExperimentConfig::detector_grid() const {
  return ArrayXd::LinSpaced(detector_points, -detector_halfwidth,
                            detector_halfwidth);
}

void ExperimentConfig::validate() const {
  setup.validate();
  beam.validate();
  geometry.validate();
  if (!(d1 > 0.0)) throw ConfigError("run: d1 must be > 0");
  if (!(d2 > 0.0)) throw ConfigError("run: d2 must be > 0");
  if (detector_points < 101 || detector_points % 2 == 0)
    throw ConfigError("detector: points must be odd and >= 101");
  if (!(detector_halfwidth > 0.0))
    throw ConfigError("detector: halfwidth must be > 0");
  if (setup.lifetime > 0.0 && !((d1 + d2) / setup.v_y < setup.lifetime)) {
    std::ostringstream os;
    os << "setup: total flight time " << (d1 + d2) / setup.v_y
       << " s exceeds the lifetime " << setup.lifetime << " s";
    throw ConfigError(os.str());
  }
  if (!(quad.amplitude_tol > 0.0))
    throw ConfigError("run: amplitude_tol must be > 0");
  if (!(quad.oracle_max_phase_step > 0.0) || quad.oracle_max_phase_step > 1.0)
    throw ConfigError("run: oracle_max_phase_step must be in (0,1]");
  if (!(tail_guard_fraction > 0.0))
    throw ConfigError("detector: tail_guard_fraction must be > 0");
  if (!(prominence_fraction > 0.0) || !(prominence_fraction < 1.0))
    throw ConfigError("run: prominence_fraction must be in (0,1)");
  if (delta_vx < 0.0) throw ConfigError("run: delta_vx must be >= 0");
}

namespace {

Provenance make_provenance(const ExperimentConfig& config) {
  Provenance p;
  // Worker count never affects results; normalize it away so serialized
  // output is byte-identical across worker counts.
  ExperimentConfig canonical = config;
  canonical.quad.workers = 1;
  p.config_text = serialize_config(canonical);
  p.config_hash = config_hash(p.config_text);
  std::ostringstream os;
  os << "slit A centered at " << config.geometry.slit_a_center * 1e6
     << " um (positive side), grating B centered at "
     << config.geometry.grating_center * 1e6
     << " um; beam sigma0 = " << config.beam.sigma0 * 1e3
     << " mm (6 mm full width at 1/e^2 intensity = 4 sigma0 by default)";
  p.geometry_note = os.str();
  return p;
}

ScenarioResult run_at(const ExperimentConfig& config, double y,
                      const Provenance& prov) {
  const double t1 = config.t1();
  const double t = t1 + y / config.setup.v_y;
  const MaskSelection selection = config.assumption == Assumption::classical
                                      ? MaskSelection::a_only
                                      : MaskSelection::a_and_b;
  const Aperture mask = build_mask(config.geometry, selection);

  ScenarioResult r;
  r.assumption = config.assumption;
  r.y_position = y;
  r.provenance = prov;

  const auto start = std::chrono::steady_clock::now();
  r.detector_field = propagate(config.setup, config.beam, mask, t1, t,
                               config.detector_grid(), config.quad);
  r.born_profile = born_density(r.detector_field);

  DensityProfile reported = r.born_profile;
  if (config.delta_vx > 0.0)
    reported = smooth_velocity_dispersion(reported, config.delta_vx, t - t1);

  if (config.assumption == Assumption::alternative) {
    const CumulativeProfile F = cumulative(reported, config.tail_guard_fraction);
    const double x_t = median(F);
    r.median_x = x_t;
    reported = truncate_at_median(reported, x_t);
  }
  r.reported_profile = std::move(reported);
  r.provenance.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return r;
}

}  // namespace

ScenarioResult run_scenario(const ExperimentConfig& config) {
  config.validate();
  const Provenance prov = make_provenance(config);
  try {
    return run_at(config, config.d2, prov);
  } catch (const NumericsError& e) {
    std::ostringstream os;
    os << "scenario [" << to_string(config.assumption) << ", y = " << config.d2
       << " m]: " << e.what();
    throw NumericsError(os.str());
  }
}

std::vector<ScenarioResult> sweep_longitudinal(
    const ExperimentConfig& config, const std::vector<double>& y_positions) {
  config.validate();
  for (std::size_t i = 0; i < y_positions.size(); ++i) {
    if (!(y_positions[i] > 0.0) || !(y_positions[i] <= config.d2))
      throw ConfigError("sweep: y positions must lie in (0, d2]");
    if (i > 0 && !(y_positions[i] > y_positions[i - 1]))
      throw ConfigError("sweep: y positions must be ascending");
  }
  const Provenance prov = make_provenance(config);
  std::vector<ScenarioResult> out;
  out.reserve(y_positions.size());
  for (const double y : y_positions) {
    try {
      out.push_back(run_at(config, y, prov));
    } catch (const NumericsError& e) {
      std::ostringstream os;
      os << "scenario [" << to_string(config.assumption) << ", y = " << y
         << " m]: " << e.what();
      throw NumericsError(os.str());
    }
  }
  return out;
}

std::vector<double> default_sweep_positions(double d2) {
  std::vector<double> y(41);
  const double y0 = 0.05;
  for (int i = 0; i < 41; ++i) y[i] = y0 + (d2 - y0) * i / 40.0;
  y.back() = d2;
  return y;
}

}  // namespace mwsim
