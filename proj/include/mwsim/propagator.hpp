#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "mwsim/aperture.hpp"
#include "mwsim/physics.hpp"

namespace mwsim {

/// Quadratic-phase kernel K(x,t;x_f,t1) = prefactor exp(i a (x-x_f)^2) with
/// a = m/(2 hbar dt) and prefactor = (m/(2 i pi hbar dt))^(1/2) taken on the
/// principal branch (phase -pi/4).
struct KernelParams {
  double a = 0.0;          ///< rad/m^2
  Complex prefactor{0.0};  ///< m^(-1), |prefactor|^2 = m/(2 pi hbar dt)
  double t1 = 0.0;
  double t = 0.0;

  static KernelParams from_times(const PhysicalSetup& setup, double t1, double t);
};

Complex kernel(const KernelParams& params, double x, double x_f);

/// Sampled complex wavefunction on a strictly increasing transverse grid.
struct ComplexField {
  ArrayXd grid;
  ArrayXcd values;
  double time = 0.0;

  void validate() const;
};

/// Numerical knobs of the propagator. Results are bit-identical for any
/// worker count; workers only partition the detector-point map.
struct QuadratureOptions {
  double amplitude_tol = 1e-8;  ///< relative quadratic-fit error per segment
  int max_poly_degree = 2;      ///< only degree 2 is implemented
  int max_subdivisions = 60;    ///< bisection depth limit per interval
  double oracle_max_phase_step = 0.2;         ///< rad
  long long oracle_sample_budget = 400000000; ///< per propagate_oracle call
  int workers = 1;
};

/// One piece of the piecewise-quadratic representation of the incident
/// wavefunction: poly(x_f) = c0 + c1 w + c2 w^2 with w = x_f - center,
/// valid on [center - halfwidth, center + halfwidth].
struct QuadraticAmplitude {
  double center = 0.0;
  double halfwidth = 0.0;
  Complex c0{0.0}, c1{0.0}, c2{0.0};
};

/// Subdivides each aperture interval until the incident psi(.,t1) is
/// represented by an interpolating quadratic to amplitude_tol relative error,
/// checked at the quarter points. Throws NumericsError if the depth limit is
/// reached (with the worst-interval diagnostic).
std::vector<QuadraticAmplitude> quadratic_amplitude_segments(
    const PhysicalSetup& setup, const BeamSpec& beam, const Aperture& aperture,
    double t1, const QuadratureOptions& opts = {});

/// Closed-form integral of exp(i a (x - x_f)^2) poly(x_f) over the segment,
/// via Fresnel-integral moments and the degree recurrence; a short
/// Gauss-Legendre rule takes over when the total phase span across the
/// segment is below 0.5 rad (where the Fresnel differences would be
/// ill-conditioned and the integrand is not oscillatory anyway).
/// The kernel prefactor is NOT included.
Complex segment_integral(const KernelParams& params, const QuadraticAmplitude& seg,
                         double x);

/// Evaluates the aperture-restricted propagation integral at every grid
/// point. Full-line marker dispatches to the closed-form free evolution;
/// empty aperture yields the zero field. Deterministic: per-point sums run
/// over segments in fixed left-to-right order regardless of worker count.
ComplexField propagate(const PhysicalSetup& setup, const BeamSpec& beam,
                       const Aperture& aperture, double t1, double t,
                       const ArrayXd& detector_grid,
                       const QuadratureOptions& opts = {});

/// Brute-force phase-resolving oracle: composite midpoint Riemann sum with
/// per-interval step <= max_phase_step / (2 a max|x - x_f|). Independent of
/// the segment method; used to gate it. Throws NumericsError when the sample
/// budget would be exceeded, stating the required count.
ComplexField propagate_oracle(const PhysicalSetup& setup, const BeamSpec& beam,
                              const Aperture& aperture, double t1, double t,
                              const ArrayXd& detector_grid,
                              double max_phase_step = 0.2,
                              long long sample_budget = 400000000,
                              int workers = 1);

/// max_i |a_i - b_i| / max_i |b_i|: field error normalized by the peak
/// magnitude over the compared points (per-point normalization is
/// meaningless at interference nulls).
double relative_field_error(const ComplexField& a, const ComplexField& b);

}  // namespace mwsim
