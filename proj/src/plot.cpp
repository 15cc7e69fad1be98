#include "mwsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwsim/png_writer.hpp"

namespace mwsim {
namespace {

constexpr int kW = 900, kH = 560;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 55;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Ticks {
  std::vector<double> at;
};

Ticks nice_ticks(double lo, double hi, int target = 8) {
  Ticks t;
  const double span = hi - lo;
  if (!(span > 0)) return t;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  const double first = std::ceil(lo / step) * step;
  for (double v = first; v <= hi + 0.5 * step; v += step) t.at.push_back(v);
  return t;
}

// Small-multiple viridis-like gradient.
void colormap(double v, std::uint8_t* rgb) {
  v = std::clamp(v, 0.0, 1.0);
  static const double stops[5][3] = {{0.267, 0.005, 0.329},
                                     {0.229, 0.322, 0.546},
                                     {0.127, 0.566, 0.551},
                                     {0.369, 0.789, 0.383},
                                     {0.993, 0.906, 0.144}};
  const double s = v * 4.0;
  const int i = std::min(3, static_cast<int>(s));
  const double f = s - i;
  for (int c = 0; c < 3; ++c) {
    const double x = stops[i][c] + f * (stops[i + 1][c] - stops[i][c]);
    rgb[c] = static_cast<std::uint8_t>(std::lround(255.0 * x));
  }
}

std::string base64(const std::vector<std::uint8_t>& data) {
  static const char* alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
  std::string out;
  out.reserve((data.size() + 2) / 3 * 4);
  for (std::size_t i = 0; i < data.size(); i += 3) {
    std::uint32_t v = data[i] << 16;
    if (i + 1 < data.size()) v |= data[i + 1] << 8;
    if (i + 2 < data.size()) v |= data[i + 2];
    out.push_back(alphabet[(v >> 18) & 63]);
    out.push_back(alphabet[(v >> 12) & 63]);
    out.push_back(i + 1 < data.size() ? alphabet[(v >> 6) & 63] : '=');
    out.push_back(i + 2 < data.size() ? alphabet[v & 63] : '=');
  }
  return out;
}

void svg_axes(std::ostream& svg, double x_lo, double x_hi, double y_lo,
              double y_hi, const std::string& x_label,
              const std::string& y_label, const std::string& title) {
  const int plot_w = kW - kMarginL - kMarginR;
  const int plot_h = kH - kMarginT - kMarginB;
  auto px = [&](double x) {
    return kMarginL + (x - x_lo) / (x_hi - x_lo) * plot_w;
  };
  auto py = [&](double y) {
    return kMarginT + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h;
  };
  svg << "<rect x='" << kMarginL << "' y='" << kMarginT << "' width='" << plot_w
      << "' height='" << plot_h << "' fill='none' stroke='black'/>\n";
  for (const double v : nice_ticks(x_lo, x_hi).at) {
    svg << "<line x1='" << px(v) << "' y1='" << kMarginT + plot_h << "' x2='"
        << px(v) << "' y2='" << kMarginT + plot_h + 5 << "' stroke='black'/>\n";
    svg << "<text x='" << px(v) << "' y='" << kMarginT + plot_h + 20
        << "' font-size='12' text-anchor='middle'>" << num(v) << "</text>\n";
  }
  for (const double v : nice_ticks(y_lo, y_hi, 6).at) {
    svg << "<line x1='" << kMarginL - 5 << "' y1='" << py(v) << "' x2='"
        << kMarginL << "' y2='" << py(v) << "' stroke='black'/>\n";
    svg << "<text x='" << kMarginL - 8 << "' y='" << py(v) + 4
        << "' font-size='12' text-anchor='end'>" << num(v) << "</text>\n";
  }
  svg << "<text x='" << kMarginL + plot_w / 2 << "' y='" << kH - 12
      << "' font-size='14' text-anchor='middle'>" << x_label << "</text>\n";
  svg << "<text x='18' y='" << kMarginT + plot_h / 2
      << "' font-size='14' text-anchor='middle' transform='rotate(-90 18 "
      << kMarginT + plot_h / 2 << ")'>" << y_label << "</text>\n";
  svg << "<text x='" << kMarginL + plot_w / 2
      << "' y='22' font-size='15' text-anchor='middle'>" << title << "</text>\n";
}

void polyline(std::ostream& svg, const ArrayXd& x_mm, const ArrayXd& y,
              double x_lo, double x_hi, double y_lo, double y_hi,
              const std::string& color, double opacity) {
  const int plot_w = kW - kMarginL - kMarginR;
  const int plot_h = kH - kMarginT - kMarginB;
  svg << "<polyline fill='none' stroke='" << color << "' stroke-opacity='"
      << opacity << "' stroke-width='1.1' points='";
  for (Eigen::Index i = 0; i < x_mm.size(); ++i) {
    const double sx = kMarginL + (x_mm[i] - x_lo) / (x_hi - x_lo) * plot_w;
    const double sy =
        kMarginT + plot_h - (y[i] - y_lo) / (y_hi - y_lo) * plot_h;
    svg << num(sx) << ',' << num(sy) << ' ';
  }
  svg << "'/>\n";
}

}  // namespace

void render_profile_svg(const ScenarioResult& result, const std::string& path) {
  const ArrayXd x_mm = result.born_profile.grid * 1e3;
  const ArrayXd& born = result.born_profile.values;
  const ArrayXd& rep = result.reported_profile.values;
  const double x_lo = x_mm[0], x_hi = x_mm[x_mm.size() - 1];
  const double y_hi = 1.05 * std::max(born.maxCoeff(), rep.maxCoeff());

  std::ofstream svg(path, std::ios::binary);
  if (!svg) throw std::runtime_error("cannot open '" + path + "' for writing");
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='"
      << kH << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  std::ostringstream title;
  title << "detector density, " << to_string(result.assumption) << " assumption, y = "
        << num(result.y_position * 1e2) << " cm";
  svg_axes(svg, x_lo, x_hi, 0.0, y_hi, "x [mm]", "density [1/m]", title.str());

  const bool same = (&born == &rep) || (born == rep).all();
  if (!same) polyline(svg, x_mm, born, x_lo, x_hi, 0.0, y_hi, "#888888", 0.8);
  polyline(svg, x_mm, rep, x_lo, x_hi, 0.0, y_hi, "#1f4e9c", 1.0);
  if (result.median_x) {
    const int plot_h = kH - kMarginT - kMarginB;
    const double sx = kMarginL + (*result.median_x * 1e3 - x_lo) / (x_hi - x_lo) *
                                     (kW - kMarginL - kMarginR);
    svg << "<line x1='" << sx << "' y1='" << kMarginT << "' x2='" << sx
        << "' y2='" << kMarginT + plot_h
        << "' stroke='#c02020' stroke-dasharray='4 3'/>\n";
    svg << "<text x='" << sx + 4 << "' y='" << kMarginT + 14
        << "' font-size='12' fill='#c02020'>median</text>\n";
  }
  svg << "</svg>\n";
}

void render_sweep_heatmap(const std::vector<ScenarioResult>& sweep,
                          HeatmapQuantity quantity, const std::string& png_path,
                          const std::string& svg_path) {
  if (sweep.empty()) throw std::invalid_argument("render_sweep_heatmap: no results");
  const Eigen::Index nx = sweep.front().born_profile.grid.size();
  PngImage img;
  img.width = static_cast<int>(nx);
  img.height = static_cast<int>(sweep.size());
  img.rgb.assign(static_cast<std::size_t>(3) * img.width * img.height, 0);

  double vmax = 0.0;
  for (const auto& r : sweep) {
    const auto& v = quantity == HeatmapQuantity::born ? r.born_profile.values
                                                      : r.reported_profile.values;
    vmax = std::max(vmax, v.maxCoeff());
  }
  // Rows top-to-bottom = far-to-near, so the slit plane sits at the bottom.
  for (std::size_t r = 0; r < sweep.size(); ++r) {
    const auto& v = quantity == HeatmapQuantity::born
                        ? sweep[r].born_profile.values
                        : sweep[r].reported_profile.values;
    const int row = static_cast<int>(sweep.size() - 1 - r);
    for (Eigen::Index i = 0; i < nx; ++i) {
      // sqrt scaling keeps the weak grating teeth visible next to the peak
      colormap(std::sqrt(v[i] / vmax), img.pixel(static_cast<int>(i), row));
    }
  }
  write_png(img, png_path);

  // SVG wrapper: embedded raster + labeled axes.
  std::ifstream png_in(png_path, std::ios::binary);
  std::vector<std::uint8_t> png_bytes((std::istreambuf_iterator<char>(png_in)),
                                      std::istreambuf_iterator<char>());
  const double x_lo = sweep.front().born_profile.grid[0] * 1e3;
  const double x_hi = sweep.front().born_profile.grid[nx - 1] * 1e3;
  const double y_lo = sweep.front().y_position * 1e2;
  const double y_hi = sweep.back().y_position * 1e2;

  std::ofstream svg(svg_path, std::ios::binary);
  if (!svg) throw std::runtime_error("cannot open '" + svg_path + "' for writing");
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='"
      << kH << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<image x='" << kMarginL << "' y='" << kMarginT << "' width='"
      << kW - kMarginL - kMarginR << "' height='" << kH - kMarginT - kMarginB
      << "' preserveAspectRatio='none' href='data:image/png;base64,"
      << base64(png_bytes) << "'/>\n";
  std::ostringstream title;
  title << (quantity == HeatmapQuantity::born ? "born density" : "reported density")
        << " evolution, " << to_string(sweep.front().assumption) << " assumption";
  svg_axes(svg, x_lo, x_hi, y_lo, y_hi, "x [mm]", "y behind slits [cm]",
           title.str());
  svg << "</svg>\n";
}

std::vector<std::string> render_plots(const std::vector<ScenarioResult>& results,
                                      const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  std::vector<std::string> written;

  if (results.size() == 1) {
    const auto& r = results.front();
    const std::string path =
        (fs::path(directory) / ("profile_" + to_string(r.assumption) + ".svg"))
            .string();
    render_profile_svg(r, path);
    written.push_back(path);
    return written;
  }

  for (const auto& tag : {HeatmapQuantity::born, HeatmapQuantity::reported}) {
    const std::string stem = tag == HeatmapQuantity::born ? "born" : "reported";
    const std::string png =
        (fs::path(directory) / ("evolution_" + stem + ".png")).string();
    const std::string svg =
        (fs::path(directory) / ("evolution_" + stem + ".svg")).string();
    render_sweep_heatmap(results, tag, png, svg);
    written.push_back(png);
    written.push_back(svg);
  }
  const std::string last =
      (fs::path(directory) /
       ("profile_" + to_string(results.back().assumption) + ".svg"))
          .string();
  render_profile_svg(results.back(), last);
  written.push_back(last);
  return written;
}

}  // namespace mwsim
