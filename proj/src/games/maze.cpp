#include "maale/games/maze.hpp"

#include <array>

namespace maale {

namespace {

constexpr std::array<GridPoint, 4> kSteps{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

}  // namespace

WallGrid carve_perfect_maze(int cells_x, int cells_y, Rng& rng) {
  WallGrid grid(2 * cells_x + 1, 2 * cells_y + 1, true);
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(cells_x) * cells_y, 0);
  auto seen = [&](int c, int r) -> std::uint8_t& {
    return visited[static_cast<std::size_t>(r) * cells_x + c];
  };

  std::vector<GridPoint> stack;
  const GridPoint start{rng.below(cells_x), rng.below(cells_y)};
  stack.push_back(start);
  seen(start.x, start.y) = 1;
  grid.set_wall(2 * start.x + 1, 2 * start.y + 1, false);

  while (!stack.empty()) {
    const GridPoint cur = stack.back();
    std::array<GridPoint, 4> options{};
    int n = 0;
    for (const auto& d : kSteps) {
      const int nc = cur.x + d.x;
      const int nr = cur.y + d.y;
      if (nc >= 0 && nr >= 0 && nc < cells_x && nr < cells_y && !seen(nc, nr)) {
        options[static_cast<std::size_t>(n++)] = {nc, nr};
      }
    }
    if (n == 0) {
      stack.pop_back();
      continue;
    }
    const GridPoint next = options[static_cast<std::size_t>(rng.below(n))];
    seen(next.x, next.y) = 1;
    grid.set_wall(cur.x + next.x + 1, cur.y + next.y + 1, false);
    grid.set_wall(2 * next.x + 1, 2 * next.y + 1, false);
    stack.push_back(next);
  }
  return grid;
}

std::vector<std::uint8_t> flood_fill(const WallGrid& grid, GridPoint start) {
  std::vector<std::uint8_t> mark(static_cast<std::size_t>(grid.width()) * grid.height(), 0);
  if (grid.wall(start.x, start.y)) return mark;
  std::vector<GridPoint> frontier{start};
  mark[static_cast<std::size_t>(start.y) * grid.width() + start.x] = 1;
  while (!frontier.empty()) {
    const GridPoint p = frontier.back();
    frontier.pop_back();
    for (const auto& d : kSteps) {
      const int x = p.x + d.x;
      const int y = p.y + d.y;
      if (grid.wall(x, y)) continue;
      auto& m = mark[static_cast<std::size_t>(y) * grid.width() + x];
      if (m) continue;
      m = 1;
      frontier.push_back({x, y});
    }
  }
  return mark;
}

bool reachable(const WallGrid& grid, GridPoint from, GridPoint to) {
  if (!grid.in_bounds(to.x, to.y)) return false;
  const auto mark = flood_fill(grid, from);
  return mark[static_cast<std::size_t>(to.y) * grid.width() + to.x] != 0;
}

}  // namespace maale
