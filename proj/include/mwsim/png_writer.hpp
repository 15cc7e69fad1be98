#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mwsim {

/// Minimal RGB8 PNG encoder (zlib-deflated, no filtering beyond type 0).
struct PngImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  ///< 3 * width * height, row-major

  std::uint8_t* pixel(int x, int y) { return rgb.data() + 3 * (y * width + x); }
};

void write_png(const PngImage& image, const std::string& path);

/// Reads width/height back from a PNG's IHDR chunk (test helper).
std::pair<int, int> read_png_size(const std::string& path);

}  // namespace mwsim
