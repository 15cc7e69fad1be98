#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mwsim/aperture.hpp"
#include "mwsim/density.hpp"
#include "mwsim/propagator.hpp"

namespace mwsim {

enum class Assumption { usual, classical, alternative };

std::string to_string(Assumption a);

/// Full scenario description. Times are always derived from the geometry:
/// t1 = d1/v_y, t2 = t1 + d2/v_y, never stored.
struct ExperimentConfig {
  PhysicalSetup setup;
  BeamSpec beam;
  SlitGeometry geometry;
  double d1 = 1.0;  ///< m, source to slit plane
  double d2 = 2.0;  ///< m, slit plane to detector
  double detector_halfwidth = 4e-3;  ///< m
  int detector_points = 4001;        ///< odd, so the grid passes through 0
  Assumption assumption = Assumption::usual;
  QuadratureOptions quad;
  double tail_guard_fraction = 1e-6;
  double delta_vx = 0.0;  ///< m/s, velocity-dispersion smoothing; 0 = off
  double prominence_fraction = 0.1;

  double t1() const { return d1 / setup.v_y; }
  double t2() const { return t1() + d2 / setup.v_y; }
  ArrayXd detector_grid() const;
  void validate() const;
};

/// Reproducibility record attached to every result.
struct Provenance {
  std::string config_text;  ///< canonical serialized configuration
  std::uint64_t config_hash = 0;
  std::string geometry_note;
  double elapsed_seconds = 0.0;
};

struct ScenarioResult {
  ComplexField detector_field;     ///< field of the assumption's mask at t
  DensityProfile born_profile;     ///< |field|^2
  DensityProfile reported_profile; ///< per-assumption density
  std::optional<double> median_x;  ///< populated for the alternative assumption
  double y_position = 0.0;         ///< m behind the slits
  Assumption assumption = Assumption::usual;
  Provenance provenance;
};

/// Propagates the beam through the assumption's mask (A-and-B for
/// usual/alternative, A-only for classical) to the detector and derives the
/// per-assumption profiles. Velocity-dispersion smoothing, when enabled,
/// applies to the reported profile before the median truncation.
ScenarioResult run_scenario(const ExperimentConfig& config);

/// One result per y (ascending, in (0, d2]), at t = t1 + y/v_y. The median is
/// recomputed at every station for the alternative assumption. The y = d2
/// entry is the same computation as run_scenario.
std::vector<ScenarioResult> sweep_longitudinal(const ExperimentConfig& config,
                                               const std::vector<double>& y_positions);

/// 41 stations, 0.05 m to 2.0 m.
std::vector<double> default_sweep_positions(double d2 = 2.0);

}  // namespace mwsim
