#pragma once

#include <cstdint>
#include <vector>

#include "maale/core/rng.hpp"

namespace maale {

struct GridPoint {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(GridPoint, GridPoint) = default;
};

// Block grid of walls and passages. A maze of cx by cy cells occupies a
// (2cx+1) by (2cy+1) grid with cell (c, r) at block (2c+1, 2r+1).
class WallGrid {
 public:
  WallGrid() = default;
  WallGrid(int width, int height, bool filled)
      : width_(width), height_(height),
        blocks_(static_cast<std::size_t>(width) * height, filled ? 1 : 0) {}

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  // Out-of-bounds reads as wall.
  bool wall(int x, int y) const {
    return !in_bounds(x, y) || blocks_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  void set_wall(int x, int y, bool wall) {
    if (in_bounds(x, y)) blocks_[static_cast<std::size_t>(y) * width_ + x] = wall ? 1 : 0;
  }

  friend bool operator==(const WallGrid&, const WallGrid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> blocks_;
};

// Perfect maze by randomized depth-first carving, starting from a random cell.
WallGrid carve_perfect_maze(int cells_x, int cells_y, Rng& rng);

// Open blocks reachable from `start` with 4-neighbour moves.
std::vector<std::uint8_t> flood_fill(const WallGrid& grid, GridPoint start);

bool reachable(const WallGrid& grid, GridPoint from, GridPoint to);

}  // namespace maale
