#pragma once

// Reference implementations written independently of the library, used to
// check its optimized versions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

// Box average with floating-point fractional overlaps, one output pixel at a
// time straight from the definition.
inline std::vector<double> box_average(const std::vector<std::uint8_t>& src, int h, int w, int oh, int ow) {
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  const double sy = static_cast<double>(h) / oh;
  const double sx = static_cast<double>(w) / ow;
  for (int oy = 0; oy < oh; ++oy) {
    for (int ox = 0; ox < ow; ++ox) {
      const double y0 = oy * sy, y1 = (oy + 1) * sy;
      const double x0 = ox * sx, x1 = (ox + 1) * sx;
      double sum = 0.0, area = 0.0;
      for (int y = static_cast<int>(std::floor(y0)); y < std::min(h, static_cast<int>(std::ceil(y1))); ++y) {
        const double wy = std::min<double>(y + 1, y1) - std::max<double>(y, y0);
        if (wy <= 0) continue;
        for (int x = static_cast<int>(std::floor(x0)); x < std::min(w, static_cast<int>(std::ceil(x1))); ++x) {
          const double wx = std::min<double>(x + 1, x1) - std::max<double>(x, x0);
          if (wx <= 0) continue;
          sum += wy * wx * src[static_cast<std::size_t>(y) * w + x];
          area += wy * wx;
        }
      }
      out[static_cast<std::size_t>(oy) * ow + ox] = sum / area;
    }
  }
  return out;
}

inline int luma(int r, int g, int b) { return static_cast<int>(std::lround(0.299 * r + 0.587 * g + 0.114 * b)); }

// Othello on a plain 8x8 array: 0 empty, 1 mover, 2 opponent.
using Board = std::array<std::array<int, 8>, 8>;

inline int flips_naive(const Board& b, int row, int col, Board* result = nullptr) {
  if (b[row][col] != 0) return 0;
  int total = 0;
  Board out = b;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      int r = row + dr, c = col + dc, run = 0;
      while (r >= 0 && r < 8 && c >= 0 && c < 8 && b[r][c] == 2) {
        r += dr;
        c += dc;
        ++run;
      }
      if (run > 0 && r >= 0 && r < 8 && c >= 0 && c < 8 && b[r][c] == 1) {
        total += run;
        for (int k = 1; k <= run; ++k) out[row + k * dr][col + k * dc] = 1;
      }
    }
  }
  if (result && total > 0) {
    out[row][col] = 1;
    *result = out;
  }
  return total;
}

}  // namespace oracle
