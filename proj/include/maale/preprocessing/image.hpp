#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "maale/core/screen.hpp"

namespace maale {

// Row-major 8-bit intensity image.
struct GrayImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> pixels;

  GrayImage() = default;
  GrayImage(int h, int w, std::uint8_t fill = 0)
      : height(h), width(w), pixels(static_cast<std::size_t>(h) * w, fill) {}

  std::uint8_t at(int y, int x) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
  std::uint8_t& at(int y, int x) { return pixels[static_cast<std::size_t>(y) * width + x]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

// round(0.299 R + 0.587 G + 0.114 B), computed in integers.
std::uint8_t luma(Rgb c);
GrayImage to_grayscale(const Screen& screen);

// Area interpolation: every output pixel is the exact area-weighted mean of
// the fractional source box it covers, rounded half up.
GrayImage resize_area(const GrayImage& image, int out_height, int out_width);

// Binary PGM (P5).
void write_pgm(std::ostream& out, const GrayImage& image);
// Binary PPM (P6) of the raw screen.
void write_ppm(std::ostream& out, const Screen& screen);

}  // namespace maale
