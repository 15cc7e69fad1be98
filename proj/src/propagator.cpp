#include "mwsim/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "mwsim/fresnel.hpp"

namespace mwsim {
namespace {

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration.
struct GaussLegendre16 {
  std::array<double, 16> node{};
  std::array<double, 16> weight{};
};

GaussLegendre16 build_gl16() {
  GaussLegendre16 gl;
  const int n = 16;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    gl.node[i] = x;
    gl.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return gl;
}

const GaussLegendre16& gl16() {
  static const GaussLegendre16 gl = build_gl16();
  return gl;
}

// int_alpha^beta exp(i a v^2) (c0 + c1 v + c2 v^2) dv, a > 0.
Complex quadratic_phase_integral(double a, double alpha, double beta, Complex c0,
                                 Complex c1, Complex c2) {
  // Total kernel phase variation across the segment.
  double span;
  if (alpha <= 0.0 && beta >= 0.0) {
    span = a * std::max(alpha * alpha, beta * beta);
  } else {
    span = a * std::fabs(beta * beta - alpha * alpha);
  }

  if (span < 0.5) {
    // Non-oscillatory segment: a fixed Gauss-Legendre rule is exact to
    // machine precision and avoids cancellation in the Fresnel differences.
    const auto& gl = gl16();
    const double mid = 0.5 * (alpha + beta);
    const double hw = 0.5 * (beta - alpha);
    Complex sum = 0.0;
    for (int i = 0; i < 16; ++i) {
      const double v = mid + hw * gl.node[i];
      const double ph = a * v * v;
      const Complex e(std::cos(ph), std::sin(ph));
      sum += gl.weight[i] * e * (c0 + v * (c1 + v * c2));
    }
    return hw * sum;
  }

  const double s = std::sqrt(2.0 * a / kPi);
  const Complex dT = fresnel_cs(s * beta) - fresnel_cs(s * alpha);
  const Complex m0 = std::sqrt(kPi / (2.0 * a)) * dT;

  const double pa = a * alpha * alpha;
  const double pb = a * beta * beta;
  const Complex ea(std::cos(pa), std::sin(pa));
  const Complex eb(std::cos(pb), std::sin(pb));
  const Complex inv_2ia = Complex(0.0, -0.5) / a;  // 1/(2 i a)
  const Complex m1 = (eb - ea) * inv_2ia;
  const Complex m2 = (beta * eb - alpha * ea) * inv_2ia - m0 * inv_2ia;

  return c0 * m0 + c1 * m1 + c2 * m2;
}

// Runs fn(begin, end) on contiguous chunks of [0, n) across `workers` threads.
template <typename Fn>
void parallel_chunks(Eigen::Index n, int workers, Fn&& fn) {
  workers = std::max(1, workers);
  if (workers == 1 || n < 2) {
    fn(Eigen::Index{0}, n);
    return;
  }
  const int nthreads = static_cast<int>(
      std::min<Eigen::Index>(workers, std::max<Eigen::Index>(1, n)));
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  const Eigen::Index chunk = (n + nthreads - 1) / nthreads;
  for (int w = 0; w < nthreads; ++w) {
    const Eigen::Index b = w * chunk;
    const Eigen::Index e = std::min(n, b + chunk);
    if (b >= e) break;
    threads.emplace_back([&fn, b, e]() { fn(b, e); });
  }
  for (auto& t : threads) t.join();
}

void check_times(double t1, double t) {
  if (!(t1 >= 0.0) || !(t > t1))
    throw std::invalid_argument("propagate: requires t > t1 >= 0");
}

}  // namespace

KernelParams KernelParams::from_times(const PhysicalSetup& setup, double t1,
                                      double t) {
  check_times(t1, t);
  const double dt = t - t1;
  KernelParams p;
  p.a = setup.mass / (2.0 * setup.hbar * dt);
  p.prefactor = std::sqrt(Complex(setup.mass) /
                          Complex(0.0, 2.0 * kPi * setup.hbar * dt));
  p.t1 = t1;
  p.t = t;
  return p;
}

Complex kernel(const KernelParams& params, double x, double x_f) {
  const double u = x - x_f;
  const double ph = params.a * u * u;
  return params.prefactor * Complex(std::cos(ph), std::sin(ph));
}

void ComplexField::validate() const {
  if (grid.size() != values.size())
    throw std::invalid_argument("ComplexField: grid/values size mismatch");
  if (grid.size() < 2)
    throw std::invalid_argument("ComplexField: needs at least 2 samples");
  for (Eigen::Index i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("ComplexField: grid must be strictly increasing");
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i].real()) || !std::isfinite(values[i].imag()))
      throw NumericsError("ComplexField: non-finite value");
}

std::vector<QuadraticAmplitude> quadratic_amplitude_segments(
    const PhysicalSetup& setup, const BeamSpec& beam, const Aperture& aperture,
    double t1, const QuadratureOptions& opts) {
  if (opts.max_poly_degree != 2)
    throw std::invalid_argument(
        "quadratic_amplitude_segments: only degree 2 is implemented");
  if (aperture.is_full_line())
    throw std::invalid_argument(
        "quadratic_amplitude_segments: aperture must be bounded");

  std::vector<QuadraticAmplitude> out;
  auto psi = [&](double x) { return free_gaussian(setup, beam, x, t1); };

  for (const auto& iv : aperture.intervals()) {
    // Depth-first, left child first, so the emitted order is left-to-right.
    struct Item {
      double lo, hi;
      int depth;
    };
    std::vector<Item> stack{{iv.lower, iv.upper, 0}};
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      const double mid = 0.5 * (it.lo + it.hi);
      const double hw = 0.5 * (it.hi - it.lo);
      const Complex fl = psi(it.lo), fm = psi(mid), fu = psi(it.hi);
      QuadraticAmplitude seg;
      seg.center = mid;
      seg.halfwidth = hw;
      seg.c0 = fm;
      seg.c1 = (fu - fl) / (2.0 * hw);
      seg.c2 = (fu - 2.0 * fm + fl) / (2.0 * hw * hw);

      const double scale = std::max({std::abs(fl), std::abs(fm), std::abs(fu)});
      double err = 0.0;
      for (const double q : {-0.5 * hw, 0.5 * hw}) {
        const Complex fit = seg.c0 + q * (seg.c1 + q * seg.c2);
        err = std::max(err, std::abs(fit - psi(mid + q)));
      }
      if (err <= opts.amplitude_tol * scale || hw <= 0.0) {
        out.push_back(seg);
      } else {
        if (it.depth >= opts.max_subdivisions) {
          std::ostringstream os;
          os << "amplitude subdivision failed to reach tol=" << opts.amplitude_tol
             << " on [" << it.lo << ", " << it.hi << "] (relative error "
             << err / scale << " at depth " << it.depth << ")";
          throw NumericsError(os.str());
        }
        stack.push_back({mid, it.hi, it.depth + 1});
        stack.push_back({it.lo, mid, it.depth + 1});
      }
    }
  }
  return out;
}

Complex segment_integral(const KernelParams& params, const QuadraticAmplitude& seg,
                         double x) {
  // Shift the polynomial from w = x_f - center to v = x_f - x.
  const double b = seg.center - x;
  const Complex c0 = seg.c0 - seg.c1 * b + seg.c2 * b * b;
  const Complex c1 = seg.c1 - 2.0 * seg.c2 * b;
  const Complex c2 = seg.c2;
  return quadratic_phase_integral(params.a, b - seg.halfwidth, b + seg.halfwidth,
                                  c0, c1, c2);
}

ComplexField propagate(const PhysicalSetup& setup, const BeamSpec& beam,
                       const Aperture& aperture, double t1, double t,
                       const ArrayXd& detector_grid, const QuadratureOptions& opts) {
  check_times(t1, t);
  ComplexField field;
  field.grid = detector_grid;
  field.time = t;

  if (aperture.is_full_line()) {
    field.values = free_gaussian(setup, beam, detector_grid, t);
    return field;
  }
  field.values = ArrayXcd::Zero(detector_grid.size());
  if (aperture.is_empty()) return field;

  const auto segments =
      quadratic_amplitude_segments(setup, beam, aperture, t1, opts);
  const KernelParams params = KernelParams::from_times(setup, t1, t);

  parallel_chunks(detector_grid.size(), opts.workers,
                  [&](Eigen::Index b, Eigen::Index e) {
                    for (Eigen::Index i = b; i < e; ++i) {
                      const double x = detector_grid[i];
                      Complex sum = 0.0;
                      for (const auto& seg : segments)
                        sum += segment_integral(params, seg, x);
                      field.values[i] = params.prefactor * sum;
                    }
                  });
  field.validate();
  return field;
}

ComplexField propagate_oracle(const PhysicalSetup& setup, const BeamSpec& beam,
                              const Aperture& aperture, double t1, double t,
                              const ArrayXd& detector_grid, double max_phase_step,
                              long long sample_budget, int workers) {
  check_times(t1, t);
  if (!(max_phase_step > 0.0) || max_phase_step > 1.0)
    throw std::invalid_argument("propagate_oracle: max_phase_step must be in (0,1]");
  if (aperture.is_full_line())
    throw std::invalid_argument("propagate_oracle: aperture must be bounded");

  ComplexField field;
  field.grid = detector_grid;
  field.time = t;
  field.values = ArrayXcd::Zero(detector_grid.size());
  if (aperture.is_empty()) return field;

  const KernelParams params = KernelParams::from_times(setup, t1, t);

  // Sample counts are a pure function of the geometry; total them up front
  // so the budget check is deterministic and independent of workers.
  long long total = 0;
  for (Eigen::Index i = 0; i < detector_grid.size(); ++i) {
    const double x = detector_grid[i];
    for (const auto& iv : aperture.intervals()) {
      const double umax =
          std::max(std::fabs(x - iv.lower), std::fabs(x - iv.upper));
      const double hmax = umax > 0.0
                              ? max_phase_step / (2.0 * params.a * umax)
                              : iv.width();
      total += static_cast<long long>(std::ceil(iv.width() / hmax));
    }
  }
  if (total > sample_budget) {
    std::ostringstream os;
    os << "propagate_oracle: " << total << " samples required, budget is "
       << sample_budget;
    throw NumericsError(os.str());
  }

  parallel_chunks(
      detector_grid.size(), workers, [&](Eigen::Index b, Eigen::Index e) {
        for (Eigen::Index i = b; i < e; ++i) {
          const double x = detector_grid[i];
          Complex sum = 0.0;
          for (const auto& iv : aperture.intervals()) {
            const double umax =
                std::max(std::fabs(x - iv.lower), std::fabs(x - iv.upper));
            const double hmax = umax > 0.0
                                    ? max_phase_step / (2.0 * params.a * umax)
                                    : iv.width();
            const long long n =
                static_cast<long long>(std::ceil(iv.width() / hmax));
            const double h = iv.width() / static_cast<double>(n);
            Complex acc = 0.0;
            for (long long k = 0; k < n; ++k) {
              const double xf = iv.lower + (static_cast<double>(k) + 0.5) * h;
              const double u = x - xf;
              const double ph = params.a * u * u;
              acc += Complex(std::cos(ph), std::sin(ph)) *
                     free_gaussian(setup, beam, xf, t1);
            }
            sum += acc * h;
          }
          field.values[i] = params.prefactor * sum;
        }
      });
  field.validate();
  return field;
}

double relative_field_error(const ComplexField& a, const ComplexField& b) {
  if (a.values.size() != b.values.size())
    throw std::invalid_argument("relative_field_error: size mismatch");
  double num = 0.0, den = 0.0;
  for (Eigen::Index i = 0; i < a.values.size(); ++i) {
    num = std::max(num, std::abs(a.values[i] - b.values[i]));
    den = std::max(den, std::abs(b.values[i]));
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace mwsim
