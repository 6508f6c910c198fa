#include "maale/games/maze_craze.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

namespace maale {

namespace {

constexpr Rgb kFloor{200, 196, 170};
constexpr Rgb kRunnerColor[2] = {{220, 60, 60}, {60, 110, 230}};
constexpr Rgb kRobberColor{230, 180, 30};
constexpr std::array<GridPoint, 4> kDirs{{{0, -1}, {1, 0}, {0, 1}, {-1, 0}}};

int sign3(int v) { return (v > 0) - (v < 0) + 1; }

}  // namespace

MazeCraze::MazeCraze(ModeId mode) : mode_(decode_maze_craze_mode(mode)) {}

std::vector<Action> MazeCraze::minimal_actions(ModeId) {
  return {Action::kNoop, Action::kFire, Action::kUp, Action::kRight, Action::kLeft, Action::kDown};
}

void MazeCraze::reset(Rng& rng) {
  clear_terminal();
  frame_ = 0;
  walls_ = carve_perfect_maze(kCellsX, kCellsY, rng);
  exit_row_ = rng.below(kCellsY);
  walls_.set_wall(exit_block().x, exit_block().y, false);

  runners_[0] = Runner{{0, 0}, {0, 0}, 0};
  runners_[1] = Runner{{0, kCellsY - 1}, {0, kCellsY - 1}, 0};
  robbers_.clear();
  if (has_robbers()) {
    while (static_cast<int>(robbers_.size()) < kNumRobbers) {
      const GridPoint c{rng.between(4, 10), rng.below(kCellsY)};
      const bool taken = std::any_of(robbers_.begin(), robbers_.end(),
                                     [&](const Runner& r) { return r.cell == c; });
      if (!taken) robbers_.push_back(Runner{c, c, 1 + rng.below(kRobberDelay)});
    }
  }
  fake_walls_.clear();
  captured_ = {0, 0};
  fakes_left_ = capture_family() ? std::array<int, 2>{kMaxFakeWalls, kMaxFakeWalls}
                                 : std::array<int, 2>{0, 0};
  lives_ = {0, 0};
}

bool MazeCraze::open_between(GridPoint from, GridPoint to) const {
  if (to.x < 0 || to.y < 0 || to.x >= kCellsX || to.y >= kCellsY) return false;
  return !walls_.wall(from.x + to.x + 1, from.y + to.y + 1);
}

bool MazeCraze::occupied(GridPoint cell) const {
  for (const auto& r : runners_) {
    if (r.cell == cell) return true;
  }
  for (const auto& r : robbers_) {
    if (r.cell == cell) return true;
  }
  return false;
}

StepOutcome MazeCraze::step(std::span<const Action> actions, Rng& rng) {
  StepOutcome out;
  out.rewards.assign(2, 0);
  ++frame_;

  for (int p = 0; p < 2; ++p) {
    auto& me = runners_[static_cast<std::size_t>(p)];
    const Joystick j = read_four_way(actions[static_cast<std::size_t>(p)]);
    if (j.fire && fakes_left_[static_cast<std::size_t>(p)] > 0) {
      const GridPoint target = me.last_cell;
      const bool placeable = !(target == me.cell) && !(target == exit_cell()) && !occupied(target) &&
                             std::find(fake_walls_.begin(), fake_walls_.end(), target) ==
                                 fake_walls_.end();
      if (placeable) {
        fake_walls_.push_back(target);
        --fakes_left_[static_cast<std::size_t>(p)];
      }
    }
    if (me.cooldown > 0) {
      --me.cooldown;
    } else if (j.dx != 0 || j.dy != 0) {
      const GridPoint next{me.cell.x + j.dx, me.cell.y + j.dy};
      if (open_between(me.cell, next)) {
        me.last_cell = me.cell;
        me.cell = next;
        me.cooldown = kMoveDelay - 1;
      }
    }
  }

  for (auto& robber : robbers_) {
    if (--robber.cooldown > 0) continue;
    robber.cooldown = kRobberDelay;
    std::array<GridPoint, 4> options{};
    int n = 0;
    for (const auto& d : kDirs) {
      const GridPoint next{robber.cell.x + d.x, robber.cell.y + d.y};
      if (open_between(robber.cell, next)) options[static_cast<std::size_t>(n++)] = next;
    }
    if (n > 0) {
      robber.last_cell = robber.cell;
      robber.cell = options[static_cast<std::size_t>(rng.below(n))];
    }
  }

  if (has_robbers()) {
    std::array<bool, 2> caught{};
    for (int p = 0; p < 2; ++p) {
      for (int i = 0; i < static_cast<int>(robbers_.size()); ++i) {
        if (!(robbers_[static_cast<std::size_t>(i)].cell == runners_[static_cast<std::size_t>(p)].cell)) continue;
        if (capture_family()) {
          captured_[static_cast<std::size_t>(p)] |= 1 << i;
        } else {
          caught[static_cast<std::size_t>(p)] = true;
        }
      }
    }
    if (caught[0] || caught[1]) {
      for (int p = 0; p < 2; ++p) {
        if (!caught[static_cast<std::size_t>(p)]) continue;
        out.rewards[static_cast<std::size_t>(p)] -= 1;
        out.rewards[static_cast<std::size_t>(1 - p)] += 1;
        lives_[static_cast<std::size_t>(p)] = kEliminated;
      }
      out.progress = true;
      end(TerminalCause::kLives);
      return out;
    }
  }

  const int all_captured = (1 << kNumRobbers) - 1;
  std::array<bool, 2> finished{};
  for (int p = 0; p < 2; ++p) {
    finished[static_cast<std::size_t>(p)] =
        runners_[static_cast<std::size_t>(p)].cell == exit_cell() &&
        (!capture_family() || captured_[static_cast<std::size_t>(p)] == all_captured);
  }
  if (finished[0] != finished[1]) {
    const int winner = finished[0] ? 0 : 1;
    out.rewards[static_cast<std::size_t>(winner)] += 1;
    out.rewards[static_cast<std::size_t>(1 - winner)] -= 1;
  }
  if (finished[0] || finished[1]) {
    out.progress = true;
    end(TerminalCause::kScoreLimit);
    return out;
  }
  if (frame_ >= kFrameLimit) end(TerminalCause::kTime);
  return out;
}

bool MazeCraze::block_visible(int bx, int by) const {
  int radius = 0;
  switch (mode_.visibility) {
    case 0: return true;
    case 1: radius = 5; break;
    case 2: radius = 3; break;
    default: return false;
  }
  for (const auto& r : runners_) {
    if (std::abs(bx - (2 * r.cell.x + 1)) <= 2 * radius &&
        std::abs(by - (2 * r.cell.y + 1)) <= 2 * radius) {
      return true;
    }
  }
  return false;
}

void MazeCraze::render(Screen& screen) const {
  screen.clear(kFloor);
  for (int by = 0; by < walls_.height(); ++by) {
    for (int bx = 0; bx < walls_.width(); ++bx) {
      if (walls_.wall(bx, by) && block_visible(bx, by)) {
        screen.fill_rect(kOriginX + bx * kBlockW, kOriginY + by * kBlockH, kBlockW, kBlockH,
                         kWallColor);
      }
    }
  }
  for (const auto& f : fake_walls_) {
    const int bx = 2 * f.x + 1;
    const int by = 2 * f.y + 1;
    if (block_visible(bx, by)) {
      screen.fill_rect(kOriginX + bx * kBlockW, kOriginY + by * kBlockH, kBlockW, kBlockH,
                       kWallColor);
    }
  }
  for (const auto& r : robbers_) {
    screen.fill_rect(kOriginX + (2 * r.cell.x + 1) * kBlockW + 1,
                     kOriginY + (2 * r.cell.y + 1) * kBlockH + 1, 3, 6, kRobberColor);
  }
  for (int p = 0; p < 2; ++p) {
    const auto& r = runners_[static_cast<std::size_t>(p)];
    screen.fill_rect(kOriginX + (2 * r.cell.x + 1) * kBlockW + 1,
                     kOriginY + (2 * r.cell.y + 1) * kBlockH + 1, 3, 6, kRunnerColor[p]);
  }
  if (capture_family()) {
    for (int p = 0; p < 2; ++p) {
      draw_number(screen, p == 0 ? 30 : 110, 6, std::popcount(static_cast<unsigned>(captured_[static_cast<std::size_t>(p)])),
                  kRunnerColor[p]);
    }
  }
}

std::vector<int> MazeCraze::features(int player) const {
  const auto& me = runners_[static_cast<std::size_t>(player)];
  std::vector<int> f;
  for (const auto& d : kDirs) {
    f.push_back(open_between(me.cell, {me.cell.x + d.x, me.cell.y + d.y}) ? 1 : 0);
  }
  GridPoint target = exit_cell();
  const int all_captured = (1 << kNumRobbers) - 1;
  if (capture_family() && captured_[static_cast<std::size_t>(player)] != all_captured) {
    int best = 1 << 20;
    for (int i = 0; i < static_cast<int>(robbers_.size()); ++i) {
      if (captured_[static_cast<std::size_t>(player)] & (1 << i)) continue;
      const auto& c = robbers_[static_cast<std::size_t>(i)].cell;
      const int d = std::abs(c.x - me.cell.x) + std::abs(c.y - me.cell.y);
      if (d < best) {
        best = d;
        target = c;
      }
    }
  }
  f.push_back(sign3(target.x - me.cell.x));
  f.push_back(sign3(target.y - me.cell.y));
  return f;
}

}  // namespace maale
