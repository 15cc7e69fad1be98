#include "mwsim/fresnel.hpp"

#include <array>
#include <cmath>

#include "mwsim/constants.hpp"

namespace mwsim {
namespace {

constexpr int kWeidemanN = 64;

struct WeidemanTable {
  std::array<double, kWeidemanN> a;  // a[0] multiplies Z^(N-1) (Horner order)
  double L;
};

// Coefficients of the Weideman rational approximation, computed from the
// cosine transform of f(theta) = exp(-t^2) (L^2 + t^2), t = L tan(theta/2).
WeidemanTable build_weideman_table() {
  WeidemanTable tbl;
  const int N = kWeidemanN;
  const int M = 2 * N;
  tbl.L = std::sqrt(N / std::sqrt(2.0));

  std::array<double, 2 * kWeidemanN> f{};  // f[k] = f(theta_k), k = 0..M-1; f(pi) = 0
  f[0] = tbl.L * tbl.L;                    // theta = 0, t = 0
  for (int k = 1; k < M; ++k) {
    const double theta = k * kPi / M;
    const double t = tbl.L * std::tan(0.5 * theta);
    f[k] = std::exp(-t * t) * (tbl.L * tbl.L + t * t);
  }
  // a_n = (1/2M) (f(0) + 2 sum_{k=1}^{M-1} f(theta_k) cos(n theta_k)), n = 1..N
  for (int n = 1; n <= N; ++n) {
    double s = f[0];
    for (int k = 1; k < M; ++k) s += 2.0 * f[k] * std::cos(n * k * kPi / M);
    tbl.a[N - n] = s / (2.0 * M);  // store in Horner (descending power) order
  }
  return tbl;
}

const WeidemanTable& weideman_table() {
  static const WeidemanTable tbl = build_weideman_table();
  return tbl;
}

std::complex<double> faddeeva_asymptotic(std::complex<double> z) {
  // w(z) = (i/sqrt(pi)) (1/z) sum_k (2k-1)!! / (2 z^2)^k, valid for large |z|.
  const std::complex<double> inv_2z2 = 0.5 / (z * z);
  std::complex<double> term = 1.0;
  std::complex<double> sum = 1.0;
  for (int k = 1; k <= 15; ++k) {
    term *= static_cast<double>(2 * k - 1) * inv_2z2;
    sum += term;
  }
  const double inv_sqrt_pi = 0.56418958354775628695;
  return std::complex<double>(0.0, inv_sqrt_pi) * sum / z;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (std::norm(z) >= 64.0) return faddeeva_asymptotic(z);
  const WeidemanTable& tbl = weideman_table();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> d = tbl.L - iz;
  const std::complex<double> Z = (tbl.L + iz) / d;
  std::complex<double> p = 0.0;
  for (int n = 0; n < kWeidemanN; ++n) p = p * Z + tbl.a[n];
  const double inv_sqrt_pi = 0.56418958354775628695;
  return 2.0 * p / (d * d) + inv_sqrt_pi / d;
}

std::complex<double> fresnel_cs(double x) {
  if (x == 0.0) return {0.0, 0.0};
  const double ax = std::fabs(x);
  const double r = std::sqrt(0.5 * kPi) * ax;
  // z = e^{i pi/4} r lies on the upper-half-plane diagonal.
  const double inv_sqrt2 = 0.70710678118654752440;
  const std::complex<double> z(r * inv_sqrt2, r * inv_sqrt2);
  const std::complex<double> w = faddeeva_w(z);
  const double phase = 0.5 * kPi * ax * ax;
  const std::complex<double> rot(std::cos(phase), std::sin(phase));
  const std::complex<double> eip4_over_sqrt2(0.5, 0.5);
  const std::complex<double> t = eip4_over_sqrt2 * (1.0 - rot * w);
  return x > 0.0 ? t : -t;
}

}  // namespace mwsim
