#include "mwsim/aperture.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mwsim {

Aperture Aperture::from_intervals(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lower < b.lower; });
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (!std::isfinite(iv.lower) || !std::isfinite(iv.upper))
      throw ConfigError("aperture: interval bounds must be finite");
    if (!(iv.lower < iv.upper)) {
      std::ostringstream os;
      os << "aperture: interval " << i << " has nonpositive width [" << iv.lower
         << ", " << iv.upper << "]";
      throw ConfigError(os.str());
    }
    if (i > 0 && !(intervals[i - 1].upper <= iv.lower)) {
      std::ostringstream os;
      os << "aperture: intervals overlap: [" << intervals[i - 1].lower << ", "
         << intervals[i - 1].upper << "] and [" << iv.lower << ", " << iv.upper
         << "]";
      throw ConfigError(os.str());
    }
  }
  Aperture a;
  a.intervals_ = std::move(intervals);
  return a;
}

Aperture Aperture::full_line() {
  Aperture a;
  a.full_line_ = true;
  return a;
}

Aperture Aperture::empty() { return Aperture{}; }

void SlitGeometry::validate() const {
  if (!(slit_a_width > 0.0))
    throw ConfigError("geometry: slit_a_width must be > 0");
  if (!(grating_slit_width > 0.0))
    throw ConfigError("geometry: grating_slit_width must be > 0");
  if (!(grating_separation > 0.0))
    throw ConfigError("geometry: grating_separation must be > 0");
  if (grating_count < 1)
    throw ConfigError("geometry: grating_count must be >= 1");

  const double a_lo = slit_a_center - 0.5 * slit_a_width;
  const double a_hi = slit_a_center + 0.5 * slit_a_width;
  const double b_lo = grating_center - 0.5 * grating_span();
  const double b_hi = grating_center + 0.5 * grating_span();
  if (a_lo < b_hi && b_lo < a_hi) {
    std::ostringstream os;
    os << "geometry: slit A [" << a_lo << ", " << a_hi
       << "] overlaps grating span [" << b_lo << ", " << b_hi << "]";
    throw ConfigError(os.str());
  }
}

Aperture build_mask(const SlitGeometry& geometry, MaskSelection selection) {
  geometry.validate();

  auto slit_a = [&]() -> Interval {
    return {geometry.slit_a_center - 0.5 * geometry.slit_a_width,
            geometry.slit_a_center + 0.5 * geometry.slit_a_width};
  };
  auto grating = [&]() -> std::vector<Interval> {
    std::vector<Interval> out;
    out.reserve(static_cast<std::size_t>(geometry.grating_count));
    const double pitch = geometry.grating_slit_width + geometry.grating_separation;
    const double left = geometry.grating_center - 0.5 * geometry.grating_span();
    for (int k = 0; k < geometry.grating_count; ++k) {
      const double lo = left + k * pitch;
      out.push_back({lo, lo + geometry.grating_slit_width});
    }
    return out;
  };

  switch (selection) {
    case MaskSelection::a_only:
      return Aperture::from_intervals({slit_a()});
    case MaskSelection::b_only:
      return Aperture::from_intervals(grating());
    case MaskSelection::a_and_b: {
      auto ivs = grating();
      ivs.push_back(slit_a());
      return Aperture::from_intervals(std::move(ivs));
    }
    case MaskSelection::full_line:
      return Aperture::full_line();
    case MaskSelection::empty:
      return Aperture::empty();
  }
  throw ConfigError("build_mask: unknown selection");
}

double total_open_width(const Aperture& aperture) {
  if (aperture.is_full_line())
    throw ConfigError("total_open_width: aperture is unbounded");
  double sum = 0.0;
  for (const auto& iv : aperture.intervals()) sum += iv.width();
  return sum;
}

std::string to_string(MaskSelection selection) {
  switch (selection) {
    case MaskSelection::a_only: return "A-only";
    case MaskSelection::b_only: return "B-only";
    case MaskSelection::a_and_b: return "A-and-B";
    case MaskSelection::full_line: return "full-line";
    case MaskSelection::empty: return "empty";
  }
  return "?";
}

}  // namespace mwsim
