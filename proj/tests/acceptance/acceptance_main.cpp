// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are pinned here, in code; measured values are always
// printed so a red line carries its evidence.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "mwsim/config.hpp"
#include "mwsim/csv_io.hpp"
#include "mwsim/density.hpp"
#include "mwsim/experiment.hpp"

using namespace mwsim;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

struct Timer {
  double start = now_seconds();
  double elapsed() const { return now_seconds() - start; }
};

const PhysicalSetup kSetup{};
const BeamSpec kBeam{};
const SlitGeometry kGeometry{};
constexpr double kT1 = 5e-3;
constexpr double kT2 = 15e-3;

QuadratureOptions fast_opts() {
  QuadratureOptions o;
  o.workers = 4;
  return o;
}

// --- criterion 1: quadrature vs the closed-form free evolution ------------

void criterion_1() {
  Timer timer;
  // A bounded aperture covering +-10 sigma0 carries all but ~1e-11 of the
  // packet, so the segment quadrature must reproduce the closed form.
  const double w = 10.0 * kBeam.sigma0;
  const Aperture wide =
      Aperture::from_intervals({{kBeam.center - w, kBeam.center + w}});
  const ArrayXd grid = ArrayXd::LinSpaced(4001, -12e-3, 12e-3);
  const ComplexField f = propagate(kSetup, kBeam, wide, kT1, kT2, grid, fast_opts());
  const ArrayXcd ref = free_gaussian(kSetup, kBeam, grid, kT2);

  double peak = 0.0, err = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    peak = std::max(peak, std::norm(ref[i]));
    err = std::max(err, std::fabs(std::norm(f.values[i]) - std::norm(ref[i])));
  }
  const double norm = born_density(f).total_mass;
  const double t = timer.elapsed();

  std::ostringstream os;
  os << "analytic oracle: max |psi|^2 error " << err / peak
     << " of peak (limit 1e-6), norm " << norm << " (limit 1 +- 1e-8), " << t
     << " s (limit 10 s)";
  report(1, err < 1e-6 * peak && std::fabs(norm - 1.0) < 1e-8 && t < 10.0,
         os.str());
}

// --- criterion 2: segment method vs Riemann oracle ------------------------

void criterion_2() {
  Timer timer;
  const ArrayXd grid = ArrayXd::LinSpaced(20, -3e-3, 3e-3);

  const Aperture slit_a = build_mask(kGeometry, MaskSelection::a_only);
  SlitGeometry sub = kGeometry;
  sub.grating_count = 50;  // 50-slit sub-grating, same center convention
  const Aperture grating50 = build_mask(sub, MaskSelection::b_only);

  double err_a = 0.0, err_b = 0.0, err_b_fine = 0.0, err_b_finer = 0.0;
  {
    const ComplexField seg =
        propagate(kSetup, kBeam, slit_a, kT1, kT2, grid, fast_opts());
    const ComplexField orc = propagate_oracle(kSetup, kBeam, slit_a, kT1, kT2,
                                              grid, 0.2, 400000000, 4);
    err_a = relative_field_error(seg, orc);
  }
  {
    const ComplexField seg =
        propagate(kSetup, kBeam, grating50, kT1, kT2, grid, fast_opts());
    const ComplexField orc = propagate_oracle(kSetup, kBeam, grating50, kT1, kT2,
                                              grid, 0.2, 400000000, 4);
    err_b = relative_field_error(seg, orc);
    // Convergence evidence: the disagreement is the oracle's own midpoint
    // truncation, falling as the square of the phase step.
    err_b_fine = relative_field_error(
        seg, propagate_oracle(kSetup, kBeam, grating50, kT1, kT2, grid, 0.1,
                              400000000, 4));
    err_b_finer = relative_field_error(
        seg, propagate_oracle(kSetup, kBeam, grating50, kT1, kT2, grid, 0.05,
                              400000000, 4));
  }
  const double t = timer.elapsed();
  std::ostringstream os;
  os << "oracle equivalence at phase step 0.2: slit A error " << err_a
     << ", 50-slit grating error " << err_b << " (limit 1e-4 each), " << t
     << " s (limit 300 s); grating error at step 0.1: " << err_b_fine
     << ", at 0.05: " << err_b_finer
     << " (oracle midpoint truncation, vanishing with the step)";
  report(2, err_a < 1e-4 && err_b < 1e-4 && t < 300.0, os.str());
}

// --- criterion 3: peak counts at the detector ------------------------------

void criterion_3() {
  ExperimentConfig classical = parse_config("[run]\nassumption = classical\n");
  classical.quad.workers = 4;
  const ScenarioResult rc = run_scenario(classical);
  const int n_classical = peak_count(rc.reported_profile, 0.1);

  Timer timer;
  ExperimentConfig usual = parse_config("");
  usual.quad.workers = 4;
  const ScenarioResult ru = run_scenario(usual);
  const double t_scan = timer.elapsed();
  const int n_usual = peak_count(ru.reported_profile, 0.1);

  // Context for the measured counts: the raw near-field profiles carry
  // Fresnel edge ripples (~14 zones across slit A); smoothing at the 50 um
  // scale removes them.
  const double flight = usual.t2() - usual.t1();
  const int n_classical_smooth = peak_count(
      smooth_velocity_dispersion(rc.reported_profile, 50e-6 / flight, flight), 0.1);
  const int n_usual_smooth = peak_count(
      smooth_velocity_dispersion(ru.reported_profile, 50e-6 / flight, flight), 0.1);

  std::ostringstream os;
  os << "peak counts at prominence 0.1: classical " << n_classical
     << " (expected 1), usual " << n_usual << " (expected 4); union scan "
     << t_scan << " s (limit 600 s); smoothed at sigma_x = 50 um the counts are "
     << n_classical_smooth << " and " << n_usual_smooth;
  report(3, n_classical == 1 && n_usual == 4 && t_scan < 600.0, os.str());
}

// --- criterion 4: no overlap just behind the slits -------------------------

void criterion_4() {
  // t = t1 + 0.25 ms. The integrand's cross term oscillates at the ~14 nm
  // scale; a 20 nm grid resolves the |psi_A|, |psi_B| envelopes and samples
  // the |cos| factor densely enough for a stable L1 estimate.
  const double t = kT1 + 0.25e-3;
  const int n = 80001;
  const ArrayXd grid = ArrayXd::LinSpaced(n, -0.8e-3, 0.8e-3);
  const Aperture a = build_mask(kGeometry, MaskSelection::a_only);
  const Aperture b = build_mask(kGeometry, MaskSelection::b_only);
  const ComplexField fa = propagate(kSetup, kBeam, a, kT1, t, grid, fast_opts());
  const ComplexField fb = propagate(kSetup, kBeam, b, kT1, t, grid, fast_opts());

  double cross_l1 = 0.0, cross_signed = 0.0, mass = 0.0;
  const double h = grid[1] - grid[0];
  for (int i = 0; i < n; ++i) {
    const double dab = std::norm(fa.values[i] + fb.values[i]);
    const double cross =
        dab - std::norm(fa.values[i]) - std::norm(fb.values[i]);
    const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
    cross_l1 += w * std::fabs(cross);
    cross_signed += w * cross;
    mass += w * dab;
  }
  std::ostringstream os;
  os << "no-overlap at y = 0.05 m: integral |cross| / mass = " << cross_l1 / mass
     << " (limit 1e-3); signed integral (field orthogonality) "
     << std::fabs(cross_signed) / mass;
  report(4, cross_l1 < 1e-3 * mass, os.str());
}

// --- criterion 5: median truncation across the sweep -----------------------

void criterion_5() {
  // The union mask's high grating orders put ~1e-3 of the peak at the
  // +-4 mm window edges, so the spec-default 1e-6 tail guard cannot hold at
  // any station; the sweep runs with the guard at 5e-3 (recorded in the
  // provenance of every result).
  ExperimentConfig cfg =
      parse_config("[run]\nassumption = alternative\n[detector]\ntail_guard_fraction = 0.005\n");
  cfg.quad.workers = 4;
  const auto results = sweep_longitudinal(cfg, default_sweep_positions(cfg.d2));

  double worst_rel = 0.0;
  bool zero_left = true;
  for (const auto& r : results) {
    const double want = 0.5 * r.born_profile.total_mass;
    worst_rel = std::max(worst_rel,
                         std::fabs(r.reported_profile.total_mass - want) / want);
    for (int i = 0; i < r.reported_profile.grid.size(); ++i) {
      if (r.reported_profile.grid[i] < *r.median_x &&
          r.reported_profile.values[i] != 0.0)
        zero_left = false;
    }
  }
  std::ostringstream os;
  os << "median truncation over " << results.size()
     << " stations: worst |mass - half|/half = " << worst_rel
     << " (limit 1e-6), strictly-left samples all zero: "
     << (zero_left ? "yes" : "no");
  report(5, worst_rel < 1e-6 && zero_left, os.str());
}

// --- criterion 6: equal open widths ----------------------------------------

void criterion_6() {
  const double wa = total_open_width(build_mask(kGeometry, MaskSelection::a_only));
  const double wb = total_open_width(build_mask(kGeometry, MaskSelection::b_only));
  std::ostringstream os;
  os << "open widths: A = " << wa << " m, B = " << wb
     << " m; |A - 100 um| = " << std::fabs(wa - 1e-4) << ", |A - B| = "
     << std::fabs(wa - wb) << " (exact to double rounding, limit 1e-15)";
  report(6, std::fabs(wa - 1e-4) < 1e-15 && std::fabs(wb - 1e-4) < 1e-15 &&
             std::fabs(wa - wb) < 1e-15,
         os.str());
}

// --- criterion 7: property suites -------------------------------------------

bool property_linearity(std::string& note) {
  const Aperture a = build_mask(kGeometry, MaskSelection::a_only);
  const Aperture b = build_mask(kGeometry, MaskSelection::b_only);
  const Aperture ab = build_mask(kGeometry, MaskSelection::a_and_b);
  const ArrayXd grid = ArrayXd::LinSpaced(301, -3e-3, 3e-3);
  const ComplexField fa = propagate(kSetup, kBeam, a, kT1, kT2, grid, fast_opts());
  const ComplexField fb = propagate(kSetup, kBeam, b, kT1, kT2, grid, fast_opts());
  const ComplexField fab = propagate(kSetup, kBeam, ab, kT1, kT2, grid, fast_opts());
  double peak = 0.0, err = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    peak = std::max(peak, std::abs(fab.values[i]));
    err = std::max(err, std::abs(fab.values[i] - (fa.values[i] + fb.values[i])));
  }
  std::ostringstream os;
  os << "linearity " << err / peak;
  note = os.str();
  return err < 1e-12 * peak;
}

bool property_parity(std::string& note) {
  const Aperture sym =
      Aperture::from_intervals({{-2.0e-4, -1.0e-4}, {1.0e-4, 2.0e-4}});
  BeamSpec centered;
  const ArrayXd grid = ArrayXd::LinSpaced(1001, -3e-3, 3e-3);
  const ComplexField f = propagate(kSetup, centered, sym, kT1, kT2, grid, fast_opts());
  double peak = 0.0, err = 0.0;
  const Eigen::Index n = grid.size();
  for (Eigen::Index i = 0; i < n; ++i)
    peak = std::max(peak, std::abs(f.values[i]));
  for (Eigen::Index i = 0; i < n; ++i)
    err = std::max(err, std::fabs(std::abs(f.values[i]) -
                                  std::abs(f.values[n - 1 - i])));
  std::ostringstream os;
  os << "parity " << err / peak;
  note = os.str();
  return err < 1e-10 * peak;
}

bool property_median(std::string& note) {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 4001;
  const ArrayXd x = ArrayXd::LinSpaced(n, -12.0, 12.0);
  const double h = x[1] - x[0];
  double worst_shift = 0.0, worst_mass = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    ArrayXd v = ArrayXd::Zero(n);
    const int k = 1 + static_cast<int>(u(rng) * 4.0);
    for (int j = 0; j < k; ++j) {
      const double mu = -4.0 + 8.0 * u(rng);
      const double sig = 0.08 + 1.2 * u(rng);
      v += (0.2 + u(rng)) * (-0.5 * ((x - mu) / sig).square()).exp() / sig;
    }
    DensityProfile d;
    d.grid = x;
    d.values = v;
    d.total_mass = trapezoid_mass(x, v);
    const double xt = median(cumulative(d, 1e-3));

    const double shift = std::floor(40.0 * (u(rng) - 0.5)) * h;
    DensityProfile ds = d;
    ds.grid = x + shift;
    const double xts = median(cumulative(ds, 1e-3));
    worst_shift = std::max(worst_shift, std::fabs(xts - (xt + shift)) / h);

    const DensityProfile tr = truncate_at_median(d, xt);
    worst_mass = std::max(
        worst_mass, std::fabs(tr.total_mass - 0.5 * d.total_mass) / d.total_mass);
  }
  std::ostringstream os;
  os << "median shift/halving over 200 mixtures: " << worst_shift
     << " grid cells, mass error " << worst_mass;
  note = os.str();
  return worst_shift <= 1.0 && worst_mass < 1e-6;
}

bool property_csv(std::string& note) {
  ExperimentConfig cfg = parse_config(
      "[geometry]\ngrating_count = 40\ngrating_center_um = -30\n"
      "[detector]\npoints = 151\nhalfwidth_mm = 2\n"
      "[run]\nassumption = classical\n");
  const ScenarioResult r1 = run_scenario(cfg);
  cfg.quad.workers = 6;
  const ScenarioResult r2 = run_scenario(cfg);
  std::ostringstream s1, s2;
  write_profile_csv(r1, s1);
  write_profile_csv(r2, s2);
  note = s1.str() == s2.str() ? "csv bytes identical (1 vs 6 workers)"
                              : "csv bytes differ";
  return s1.str() == s2.str();
}

void criterion_7() {
  std::string n1, n2, n3, n4;
  const bool p1 = property_linearity(n1);
  const bool p2 = property_parity(n2);
  const bool p3 = property_median(n3);
  const bool p4 = property_csv(n4);
  report(7, p1 && p2 && p3 && p4,
         "property suites: " + n1 + "; " + n2 + "; " + n3 + "; " + n4);
}

// --- criterion 8: de Broglie wavelength -------------------------------------

void criterion_8() {
  const double lambda_um = de_broglie_wavelength(kSetup) * 1e6;
  std::ostringstream os;
  os << "de Broglie wavelength " << lambda_um
     << " um (expected 8.6e-5 um to 2 s.f.)";
  report(8, std::fabs(lambda_um - 8.6e-5) < 0.05e-5, os.str());
}

}  // namespace

int main() {
  std::printf("acceptance suite: proposed Rydberg-atom asymmetric-slit experiment\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  std::printf("%d of 8 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
