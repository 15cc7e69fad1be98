#include "mwsim/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mwsim/errors.hpp"

namespace mwsim {

double trapezoid_mass(const ArrayXd& grid, const ArrayXd& values) {
  double sum = 0.0;
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    sum += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
  return sum;
}

double DensityProfile::edge_peak_ratio() const {
  const double peak = values.maxCoeff();
  if (!(peak > 0.0)) return 0.0;
  return std::max(values[0], values[values.size() - 1]) / peak;
}

void DensityProfile::validate() const {
  if (grid.size() != values.size())
    throw std::invalid_argument("DensityProfile: grid/values size mismatch");
  if (grid.size() < 2)
    throw std::invalid_argument("DensityProfile: needs at least 2 samples");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("DensityProfile: grid must be increasing");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
      throw std::invalid_argument("DensityProfile: values must be finite and >= 0");
}

DensityProfile born_density(const ComplexField& field) {
  field.validate();
  DensityProfile d;
  d.grid = field.grid;
  d.values = field.values.abs2();
  d.time = field.time;
  d.total_mass = trapezoid_mass(d.grid, d.values);
  if (!(d.total_mass > 0.0))
    throw NumericsError("born_density: all-zero field has zero mass");
  return d;
}

CumulativeProfile cumulative(const DensityProfile& density,
                             double tail_guard_fraction) {
  density.validate();
  if (!(density.total_mass > 0.0))
    throw NumericsError("cumulative: zero-mass density");
  const double ratio = density.edge_peak_ratio();
  if (ratio >= tail_guard_fraction) {
    std::ostringstream os;
    os << "cumulative: window too small, edge/peak density ratio " << ratio
       << " exceeds tail guard " << tail_guard_fraction;
    throw NumericsError(os.str());
  }

  CumulativeProfile out;
  out.grid = density.grid;
  out.values = ArrayXd::Zero(density.grid.size());
  double run = 0.0;
  for (Eigen::Index i = 1; i < density.grid.size(); ++i) {
    run += 0.5 * (density.values[i] + density.values[i - 1]) *
           (density.grid[i] - density.grid[i - 1]);
    out.values[i] = run;
  }
  out.values /= run;  // last value exactly 1
  return out;
}

double median(const CumulativeProfile& cumulative) {
  const ArrayXd& F = cumulative.values;
  const ArrayXd& x = cumulative.grid;
  const Eigen::Index n = F.size();
  if (n < 2) throw std::invalid_argument("median: too few samples");

  const double eps = 1e-12;
  // Leftmost and rightmost crossings of 1/2; they coincide unless F is flat
  // at 1/2 across a zero-density gap, in which case the midpoint is taken.
  auto interpolate = [&](Eigen::Index i) {
    // crossing inside cell (i-1, i)
    const double f0 = F[i - 1], f1 = F[i];
    if (f1 == f0) return 0.5 * (x[i - 1] + x[i]);
    return x[i - 1] + (0.5 - f0) / (f1 - f0) * (x[i] - x[i - 1]);
  };

  Eigen::Index lo = 0;
  while (lo + 1 < n && F[lo + 1] < 0.5 - eps) ++lo;
  // F[lo] < 0.5-eps or lo == 0; crossing enters at cell (lo, lo+1)
  Eigen::Index hi = n - 1;
  while (hi - 1 > 0 && F[hi - 1] > 0.5 + eps) --hi;

  const double xa = interpolate(lo + 1);
  const double xb = interpolate(hi);
  return 0.5 * (xa + xb);
}

DensityProfile truncate_at_median(const DensityProfile& density, double x_t) {
  density.validate();
  const ArrayXd& x = density.grid;
  const Eigen::Index n = x.size();
  if (!(x_t >= x[0]) || !(x_t <= x[n - 1]))
    throw std::invalid_argument("truncate_at_median: x_t outside the grid window");

  DensityProfile out;
  out.grid = x;
  out.time = density.time;
  out.values = density.values;

  // First grid index at or right of x_t.
  Eigen::Index i = 0;
  while (i < n && x[i] < x_t) ++i;

  for (Eigen::Index j = 0; j < i; ++j) out.values[j] = 0.0;

  double mass = trapezoid_mass(x, out.values);
  if (i > 0) {
    // Cell (i-1, i) contributed 0.5 v_i h to the trapezoid above; replace it
    // with the slice [x_t, x_i] at the cell's trapezoid mean density, which
    // is what linear interpolation of F assigns to the right of x_t.
    const double mean = 0.5 * (density.values[i - 1] + density.values[i]);
    mass += mean * (x[i] - x_t) - 0.5 * out.values[i] * (x[i] - x[i - 1]);
  }
  out.total_mass = mass;
  return out;
}

DensityProfile smooth_velocity_dispersion(const DensityProfile& density,
                                          double delta_vx, double flight_time) {
  density.validate();
  if (delta_vx < 0.0)
    throw std::invalid_argument("smooth_velocity_dispersion: delta_vx must be >= 0");
  if (delta_vx == 0.0) return density;

  const double sigma = delta_vx * flight_time;
  const ArrayXd& x = density.grid;
  const double window = x[x.size() - 1] - x[0];
  if (sigma > 0.25 * window) {
    std::ostringstream os;
    os << "smooth_velocity_dispersion: smoothing width " << sigma
       << " exceeds a quarter of the window " << window;
    throw NumericsError(os.str());
  }

  const double h = x[1] - x[0];
  for (Eigen::Index i = 1; i < x.size(); ++i)
    if (std::fabs((x[i] - x[i - 1]) - h) > 1e-9 * h)
      throw std::invalid_argument("smooth_velocity_dispersion: grid must be uniform");
  const Eigen::Index radius =
      std::max<Eigen::Index>(1, static_cast<Eigen::Index>(std::ceil(6.0 * sigma / h)));
  ArrayXd kernel(2 * radius + 1);
  for (Eigen::Index k = -radius; k <= radius; ++k)
    kernel[k + radius] = std::exp(-0.5 * (k * h / sigma) * (k * h / sigma));
  kernel /= kernel.sum();

  DensityProfile out;
  out.grid = x;
  out.time = density.time;
  out.values = ArrayXd::Zero(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    const Eigen::Index k0 = std::max<Eigen::Index>(-radius, -i);
    const Eigen::Index k1 = std::min<Eigen::Index>(radius, x.size() - 1 - i);
    for (Eigen::Index k = k0; k <= k1; ++k)
      acc += kernel[k + radius] * density.values[i + k];
    out.values[i] = acc;
  }
  out.total_mass = trapezoid_mass(x, out.values);
  return out;
}

int peak_count(const DensityProfile& density, double prominence_fraction) {
  if (!(prominence_fraction > 0.0) || !(prominence_fraction < 1.0))
    throw std::invalid_argument("peak_count: prominence_fraction must be in (0,1)");
  const ArrayXd& v = density.values;
  const Eigen::Index n = v.size();
  const double vmax = v.maxCoeff();
  if (!(vmax > 0.0)) return 0;
  const double threshold = prominence_fraction * vmax;

  int count = 0;
  Eigen::Index i = 1;
  while (i < n - 1) {
    if (v[i] > v[i - 1]) {
      // Possible peak or plateau starting at i.
      Eigen::Index j = i;
      while (j + 1 < n && v[j + 1] == v[i]) ++j;
      if (j + 1 < n && v[j + 1] < v[i]) {
        // Peak at left edge of the plateau [i, j]. Topographic prominence:
        // walk out on each side until a higher sample, track the minimum.
        const double h = v[i];
        double left_min = h;
        for (Eigen::Index k = i - 1; k >= 0; --k) {
          if (v[k] > h) break;
          left_min = std::min(left_min, v[k]);
          if (k == 0) break;
        }
        double right_min = h;
        for (Eigen::Index k = j + 1; k < n; ++k) {
          if (v[k] > h) break;
          right_min = std::min(right_min, v[k]);
        }
        const double prominence = h - std::max(left_min, right_min);
        if (prominence > threshold) ++count;
        i = j + 1;
        continue;
      }
      i = j + 1;
      continue;
    }
    ++i;
  }
  return count;
}

}  // namespace mwsim
