#pragma once

#include <string>
#include <vector>

#include "mwsim/experiment.hpp"

namespace mwsim {

/// Detector profile line plot (SVG): reported density vs transverse position
/// in mm, with the born density underlaid when it differs.
void render_profile_svg(const ScenarioResult& result, const std::string& path);

enum class HeatmapQuantity { born, reported };

/// Longitudinal evolution heatmap: one pixel row per sweep station
/// (y in cm on the vertical axis, x in mm on the horizontal). Writes a raw
/// PNG and an SVG wrapper with labeled axes around the embedded raster.
void render_sweep_heatmap(const std::vector<ScenarioResult>& sweep,
                          HeatmapQuantity quantity, const std::string& png_path,
                          const std::string& svg_path);

/// Convenience driver: a profile plot per scenario; for multi-station sweeps
/// additionally the born and reported heatmaps. Returns the written paths.
std::vector<std::string> render_plots(const std::vector<ScenarioResult>& results,
                                      const std::string& directory);

}  // namespace mwsim
