#pragma once

#include <Eigen/Core>
#include <complex>

#include "mwsim/constants.hpp"
#include "mwsim/errors.hpp"

namespace mwsim {

using Complex = std::complex<double>;
using Eigen::ArrayXcd;
using Eigen::ArrayXd;

/// Particle constants and beam kinematics. n_principal and lifetime are
/// metadata only; they never enter the dynamics.
struct PhysicalSetup {
  double mass = 3.84e-26;   ///< kg
  double hbar = kHbarSI;    ///< J s
  double v_y = 200.0;       ///< m/s, longitudinal speed
  int n_principal = 60;     ///< metadata
  double lifetime = 70e-3;  ///< s, metadata; <= 0 means "not provided"

  void validate() const {
    if (!(mass > 0.0)) throw ConfigError("setup: mass must be > 0");
    if (!(hbar > 0.0)) throw ConfigError("setup: hbar must be > 0");
    if (!(v_y > 0.0)) throw ConfigError("setup: v_y must be > 0");
  }
};

/// Transverse Gaussian beam: sigma0 is the Gaussian width parameter of the
/// free packet, center the transverse offset of the beam axis.
struct BeamSpec {
  double sigma0 = 1.5e-3;  ///< m
  double center = 0.0;     ///< m

  void validate() const {
    if (!(sigma0 > 0.0)) throw ConfigError("beam: sigma0 must be > 0");
  }
};

/// lambda = h / (m v_y), with h = 2 pi hbar.
inline double de_broglie_wavelength(const PhysicalSetup& setup) {
  return 2.0 * kPi * setup.hbar / (setup.mass * setup.v_y);
}

/// s(t) = sigma0 (1 + i hbar t / (2 m sigma0^2)). Re s == sigma0 for all t;
/// Im s grows linearly in t.
inline Complex complex_width(const PhysicalSetup& setup, const BeamSpec& beam,
                             double t) {
  const double ratio =
      setup.hbar * t / (2.0 * setup.mass * beam.sigma0 * beam.sigma0);
  return Complex(beam.sigma0, beam.sigma0 * ratio);
}

/// Free Gaussian packet psi(x,t) = (2 pi s(t)^2)^(-1/4) exp(-x'^2/(4 sigma0 s(t)))
/// with x' = x - beam.center. The quarter power uses the principal branch,
/// exp(-Log(2 pi s^2)/4), so the t = 0 limit is real positive.
inline Complex free_gaussian(const PhysicalSetup& setup, const BeamSpec& beam,
                             double x, double t) {
  const Complex s = complex_width(setup, beam, t);
  const Complex norm = std::exp(-0.25 * std::log(2.0 * kPi * s * s));
  const double xr = x - beam.center;
  return norm * std::exp(-xr * xr / (4.0 * beam.sigma0 * s));
}

/// Vectorized form of free_gaussian over a grid of positions.
inline ArrayXcd free_gaussian(const PhysicalSetup& setup, const BeamSpec& beam,
                              const ArrayXd& x, double t) {
  const Complex s = complex_width(setup, beam, t);
  const Complex norm = std::exp(-0.25 * std::log(2.0 * kPi * s * s));
  const Complex decay = -1.0 / (4.0 * beam.sigma0 * s);
  const ArrayXd xr = x - beam.center;
  return norm * (decay * xr.square().cast<Complex>()).exp();
}

}  // namespace mwsim
