#include "maale/games/combat.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string_view>

namespace maale {

namespace {

using fx::Fixed;
using fx::from_px;

constexpr std::array<std::string_view, Combat::kRows> kMazeLayout{
    "####################", "#..................#", "#..................#",
    "#....##......##....#", "#....#........#....#", "#..................#",
    "#........##........#", "#...#....##....#...#", "#...#..........#...#",
    "#...#..........#...#", "#..................#", "#...#..........#...#",
    "#...#..........#...#", "#...#....##....#...#", "#........##........#",
    "#..................#", "#....#........#....#", "#....##......##....#",
    "#..................#", "#..................#", "####################",
};

constexpr int kFieldBottom = Combat::kFieldTop + Combat::kRows * Combat::kCell;
constexpr int kSpawnCol[2] = {2, 17};
constexpr int kSpawnRow = 10;
constexpr int kSpawnHeading[2] = {0, 8};

constexpr Rgb kField{170, 160, 96};
constexpr Rgb kWallColor{84, 92, 214};
constexpr Rgb kPlayerColor[2] = {{200, 72, 72}, {72, 160, 200}};
constexpr Rgb kShotColor[2] = {{240, 128, 128}, {128, 208, 240}};

Fixed wrap(Fixed v, int lo, int hi) {
  const Fixed span = from_px(hi - lo);
  Fixed off = (v - from_px(lo)) % span;
  if (off < 0) off += span;
  return from_px(lo) + off;
}

}  // namespace

Combat::Combat(ModeId mode) : flags_(decode_combat_mode(mode)) {}

std::vector<Action> Combat::minimal_actions(ModeId mode) {
  if (decode_combat_mode(mode).style == CombatStyle::kPlane) {
    return {Action::kNoop,  Action::kFire,      Action::kRight,
            Action::kLeft,  Action::kRightFire, Action::kLeftFire};
  }
  return {Action::kNoop,     Action::kFire,      Action::kUp,          Action::kRight,
          Action::kLeft,     Action::kUpRight,   Action::kUpLeft,      Action::kUpFire,
          Action::kRightFire, Action::kLeftFire, Action::kUpRightFire, Action::kUpLeftFire};
}

void Combat::reset(Rng& /*rng*/) {
  clear_terminal();
  frame_ = 0;
  scores_ = {0, 0};
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      const bool border = r == 0 || c == 0 || r == kRows - 1 || c == kCols - 1;
      const bool obstacle = flags_.maze && kMazeLayout[static_cast<std::size_t>(r)]
                                                       [static_cast<std::size_t>(c)] == '#';
      walls_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          is_tank() && (border || obstacle);
    }
  }
  for (int p = 0; p < 2; ++p) spawn(p);
}

void Combat::spawn(int player) {
  auto& v = vehicles_[static_cast<std::size_t>(player)];
  v = Vehicle{};
  v.x = from_px(kSpawnCol[player] * kCell + kCell / 2);
  v.y = from_px(kFieldTop + kSpawnRow * kCell + kCell / 2);
  v.heading = kSpawnHeading[player];
}

bool Combat::wall_cell(int col, int row) const {
  if (col < 0 || row < 0 || col >= kCols || row >= kRows) return is_tank();
  return walls_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

bool Combat::solid_at(Fixed x, Fixed y) const {
  const int px = fx::to_px(x);
  const int py = fx::to_px(y) - kFieldTop;
  if (px < 0 || py < 0) return wall_cell(-1, -1);
  return wall_cell(px / kCell, py / kCell);
}

bool Combat::blocked(Fixed cx, Fixed cy, int self) const {
  const int x0 = fx::to_px(cx) - kTankHalf;
  const int y0 = fx::to_px(cy) - kTankHalf;
  const int x1 = x0 + 2 * kTankHalf - 1;
  const int y1 = y0 + 2 * kTankHalf - 1;
  for (int y : {y0, y1}) {
    for (int x : {x0, x1}) {
      if (solid_at(from_px(x), from_px(y))) return true;
    }
  }
  const auto& me = vehicles_[static_cast<std::size_t>(self)];
  const auto& other = vehicles_[static_cast<std::size_t>(1 - self)];
  auto overlap = [&](Fixed ax, Fixed ay) {
    return std::abs(fx::to_px(ax) - fx::to_px(other.x)) < 2 * kTankHalf &&
           std::abs(fx::to_px(ay) - fx::to_px(other.y)) < 2 * kTankHalf;
  };
  // Already-overlapping tanks (after a respawn) may separate freely.
  return overlap(cx, cy) && !overlap(me.x, me.y);
}

void Combat::launch(int player) {
  auto& v = vehicles_[static_cast<std::size_t>(player)];
  const fx::Unit u = fx::heading16(v.heading);
  Shot& s = v.shot;
  s.active = true;
  s.x = v.x + fx::scale(from_px(6), u.x);
  s.y = v.y + fx::scale(from_px(6), u.y);
  s.vx = fx::scale(kShotSpeed, u.x);
  s.vy = fx::scale(kShotSpeed, u.y);
  s.bounces = 0;
  s.life = is_tank() && flags_.billiards ? 96 : 64;
  v.fired = true;
}

bool Combat::advance_shot(int player) {
  auto& v = vehicles_[static_cast<std::size_t>(player)];
  Shot& s = v.shot;
  if (!s.active) return false;

  const bool guided = is_tank() ? !flags_.billiards : flags_.guided;
  if (guided) {
    const fx::Unit u = fx::heading16(v.heading);
    s.vx = fx::scale(kShotSpeed, u.x);
    s.vy = fx::scale(kShotSpeed, u.y);
  }

  const Fixed nx = s.x + s.vx;
  const Fixed ny = s.y + s.vy;
  if (is_tank()) {
    if (solid_at(nx, ny)) {
      if (!flags_.billiards) {
        s.active = false;
        return false;
      }
      // Axis-aligned reflection: angle in equals angle out.
      const bool block_x = solid_at(nx, s.y);
      const bool block_y = solid_at(s.x, ny);
      if (block_x) s.vx = -s.vx;
      if (block_y) s.vy = -s.vy;
      if (!block_x && !block_y) {
        s.vx = -s.vx;
        s.vy = -s.vy;
      }
      ++s.bounces;
    } else {
      s.x = nx;
      s.y = ny;
    }
  } else {
    s.x = nx;
    s.y = ny;
    if (s.x < 0 || s.x >= from_px(Screen::kWidth) || s.y < from_px(kFieldTop) ||
        s.y >= from_px(kFieldBottom)) {
      s.active = false;
      return false;
    }
  }

  if (--s.life <= 0) {
    s.active = false;
    return false;
  }
  const bool lethal = !(is_tank() && flags_.billiards) || s.bounces > 0;
  const auto& target = vehicles_[static_cast<std::size_t>(1 - player)];
  const int dx = fx::to_px(s.x) - fx::to_px(target.x);
  const int dy = fx::to_px(s.y) - fx::to_px(target.y);
  return lethal && dx >= -kTankHalf && dx < kTankHalf && dy >= -kTankHalf && dy < kTankHalf;
}

StepOutcome Combat::step(std::span<const Action> actions, Rng& /*rng*/) {
  StepOutcome out;
  out.rewards.assign(2, 0);
  ++frame_;

  for (int p = 0; p < 2; ++p) {
    auto& v = vehicles_[static_cast<std::size_t>(p)];
    const Joystick j = read_joystick(actions[static_cast<std::size_t>(p)]);
    v.fired = false;
    v.collided = false;

    if (v.turn_cooldown > 0) {
      --v.turn_cooldown;
    } else if (j.dx != 0) {
      v.heading = (v.heading + j.dx + 16) % 16;
      v.turn_cooldown = kTurnDelay;
    }

    Fixed speed = 0;
    if (is_tank()) {
      if (j.dy < 0) speed = kTankSpeed;
    } else {
      speed = flags_.jet ? kJetSpeed : kBiplaneSpeed;
    }
    if (speed != 0) {
      const fx::Unit u = fx::heading16(v.heading);
      Fixed nx = v.x + fx::scale(speed, u.x);
      Fixed ny = v.y + fx::scale(speed, u.y);
      if (is_tank()) {
        if (blocked(nx, ny, p)) {
          v.collided = true;
        } else {
          v.x = nx;
          v.y = ny;
        }
      } else {
        v.x = wrap(nx, 0, Screen::kWidth);
        v.y = wrap(ny, kFieldTop, kFieldBottom);
      }
    }

    if (j.fire && !v.shot.active) launch(p);
  }

  std::array<bool, 2> hit{};
  for (int p = 0; p < 2; ++p) hit[static_cast<std::size_t>(p)] = advance_shot(p);
  for (int p = 0; p < 2; ++p) {
    if (!hit[static_cast<std::size_t>(p)]) continue;
    out.rewards[static_cast<std::size_t>(p)] += 1;
    out.rewards[static_cast<std::size_t>(1 - p)] -= 1;
    ++scores_[static_cast<std::size_t>(p)];
    vehicles_[static_cast<std::size_t>(p)].shot.active = false;
    out.progress = true;
  }
  for (int p = 0; p < 2; ++p) {
    if (hit[static_cast<std::size_t>(1 - p)]) spawn(p);
  }

  for (auto& v : vehicles_) {
    if (v.fired || v.collided) {
      v.flash = kFlashFrames;
    } else if (v.flash > 0) {
      --v.flash;
    }
  }

  if (frame_ >= kMatchFrames) end(TerminalCause::kTime);
  return out;
}

bool Combat::vehicle_visible(int player) const {
  return !(is_tank() && flags_.invisible) ||
         vehicles_[static_cast<std::size_t>(player)].flash > 0;
}

std::array<int, 4> Combat::sprite_rect(int player) const {
  const auto& v = vehicles_[static_cast<std::size_t>(player)];
  return {fx::to_px(v.x) - kSpriteHalf, fx::to_px(v.y) - kSpriteHalf, 2 * kSpriteHalf,
          2 * kSpriteHalf};
}

void Combat::render(Screen& screen) const {
  screen.clear(kField);
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      if (walls_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) {
        screen.fill_rect(c * kCell, kFieldTop + r * kCell, kCell, kCell, kWallColor);
      }
    }
  }
  draw_number(screen, 40, 6, scores_[0], kPlayerColor[0]);
  draw_number(screen, 104, 6, scores_[1], kPlayerColor[1]);

  for (int p = 0; p < 2; ++p) {
    if (!vehicle_visible(p)) continue;
    const auto& v = vehicles_[static_cast<std::size_t>(p)];
    const int cx = fx::to_px(v.x);
    const int cy = fx::to_px(v.y);
    const Rgb color = kPlayerColor[p];
    if (is_tank()) {
      screen.fill_rect(cx - kTankHalf, cy - kTankHalf, 2 * kTankHalf, 2 * kTankHalf, color);
    } else {
      screen.fill_rect(cx - 3, cy - 2, 6, 4, color);
    }
    const fx::Unit u = fx::heading16(v.heading);
    const int bx = cx + static_cast<int>(std::lround(4.0 * u.x / fx::kUnitScale));
    const int by = cy + static_cast<int>(std::lround(4.0 * u.y / fx::kUnitScale));
    screen.fill_rect(bx - 1, by - 1, 2, 2, color);
  }
  for (int p = 0; p < 2; ++p) {
    const Shot& s = vehicles_[static_cast<std::size_t>(p)].shot;
    if (s.active) screen.fill_rect(fx::to_px(s.x) - 1, fx::to_px(s.y) - 1, 2, 2, kShotColor[p]);
  }
}

std::vector<int> Combat::features(int player) const {
  const auto& me = vehicles_[static_cast<std::size_t>(player)];
  const auto& other = vehicles_[static_cast<std::size_t>(1 - player)];
  const double dx = fx::to_px(other.x) - fx::to_px(me.x);
  const double dy = fx::to_px(other.y) - fx::to_px(me.y);
  const double angle = std::atan2(dy, dx);
  const int absolute = static_cast<int>(std::lround(angle / (2 * std::numbers::pi) * 16.0));
  const int relative = ((absolute - me.heading) % 16 + 16) % 16;
  const double dist = std::hypot(dx, dy);
  const int dist_bin = dist < 40 ? 0 : (dist < 90 ? 1 : 2);
  return {relative / 2, dist_bin, me.shot.active ? 1 : 0};
}

}  // namespace maale
