#pragma once

#include <string>
#include <vector>

#include "mwsim/errors.hpp"

namespace mwsim {

/// One open interval (lower, upper) on the transverse axis, in meters.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

/// An ordered set of disjoint open intervals, or the explicit full-line
/// marker. Immutable after construction; validation happens on construction.
class Aperture {
 public:
  /// Validates ordering, positive widths and pairwise disjointness:
  /// lower_i < upper_i <= lower_{i+1}.
  static Aperture from_intervals(std::vector<Interval> intervals);
  static Aperture full_line();
  static Aperture empty();

  bool is_full_line() const { return full_line_; }
  bool is_empty() const { return !full_line_ && intervals_.empty(); }
  const std::vector<Interval>& intervals() const { return intervals_; }

 private:
  std::vector<Interval> intervals_;
  bool full_line_ = false;
};

enum class MaskSelection { a_only, b_only, a_and_b, full_line, empty };

/// Slit plane layout: one wide slit A and a uniform grating B of
/// grating_count slits. Separation is the edge-to-edge gap between
/// neighbouring grating slits (pitch = width + separation).
struct SlitGeometry {
  double slit_a_width = 100e-6;        ///< m
  double slit_a_center = 150e-6;       ///< m
  double grating_slit_width = 0.1e-6;  ///< m
  double grating_separation = 0.2e-6;  ///< m
  int grating_count = 1000;
  double grating_center = -150e-6;  ///< m

  double grating_span() const {
    return grating_count * grating_slit_width +
           (grating_count - 1) * grating_separation;
  }

  /// Checks positivity and that slit A does not overlap the grating span.
  void validate() const;
};

/// Builds the aperture mask for the requested selection. a_and_b is the
/// sorted disjoint union; full_line is the explicit unbounded marker.
Aperture build_mask(const SlitGeometry& geometry, MaskSelection selection);

/// Sum of interval widths. Throws on the unbounded marker.
double total_open_width(const Aperture& aperture);

std::string to_string(MaskSelection selection);

}  // namespace mwsim
