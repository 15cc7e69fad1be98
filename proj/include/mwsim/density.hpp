#pragma once

#include <Eigen/Core>

#include "mwsim/propagator.hpp"

namespace mwsim {

/// Nonnegative density samples on an increasing grid, with total-mass
/// bookkeeping (composite trapezoid over the window). The truncated-density
/// path keeps the straddled half-cell in total_mass, so total_mass is the
/// authoritative mass, not the raw trapezoid of the samples.
struct DensityProfile {
  ArrayXd grid;
  ArrayXd values;
  double time = 0.0;
  double total_mass = 0.0;

  /// density at the window edges relative to the peak; the guard in
  /// cumulative() rejects profiles whose pattern was not captured.
  double edge_peak_ratio() const;
  void validate() const;
};

/// Normalized running integral F in [0,1]; F.values.last == 1 exactly.
struct CumulativeProfile {
  ArrayXd grid;
  ArrayXd values;
};

/// Trapezoid mass of samples on a grid (helper, exposed for tests).
double trapezoid_mass(const ArrayXd& grid, const ArrayXd& values);

/// values = |psi|^2 on the same grid. Throws NumericsError on an all-zero
/// field (zero mass poisons the downstream median).
DensityProfile born_density(const ComplexField& field);

/// Running trapezoid integral divided by total mass. Throws NumericsError
/// when the tail condition fails: density at either window edge >=
/// tail_guard_fraction * peak (window too small; the message reports the
/// edge/peak ratio).
CumulativeProfile cumulative(const DensityProfile& density,
                             double tail_guard_fraction = 1e-6);

/// The x with F(x) = 1/2, by linear interpolation between bracketing
/// samples. If F is flat at 1/2 across a zero-density gap, the midpoint of
/// the flat interval is returned.
double median(const CumulativeProfile& cumulative);

/// Zeroes the samples strictly left of x_t. The straddled cell is split by
/// linear interpolation of F, i.e. the slice mass uses the cell's trapezoid
/// density mean, which makes the truncated total_mass equal
/// (1 - F(x_t)) * mass exactly (up to rounding).
DensityProfile truncate_at_median(const DensityProfile& density, double x_t);

/// Convolution with a Gaussian of sigma = delta_vx * flight_time.
/// delta_vx = 0 is the identity. Throws when sigma exceeds a quarter of the
/// window.
DensityProfile smooth_velocity_dispersion(const DensityProfile& density,
                                          double delta_vx, double flight_time);

/// Number of local maxima with topographic prominence above
/// prominence_fraction * global maximum. A plateau counts once, at its left
/// edge; window-edge samples are not peaks.
int peak_count(const DensityProfile& density, double prominence_fraction = 0.1);

}  // namespace mwsim
