#include "maale/games/space_invaders.hpp"

#include <algorithm>
#include <cstdlib>

namespace maale {

namespace {

constexpr Rgb kBackground{0, 0, 0};
constexpr Rgb kCannonColor[2] = {{220, 60, 60}, {60, 110, 230}};
constexpr Rgb kLaserColor[2] = {{255, 140, 140}, {140, 180, 255}};
constexpr Rgb kBombColor{240, 240, 240};
constexpr Rgb kShieldColor{200, 120, 40};
constexpr Rgb kGroundColor{120, 120, 120};
constexpr std::array<int, 2> kStartX{40, 112};

bool overlap(int ax, int ay, int aw, int ah, int bx, int by, int bw, int bh) {
  return ax < bx + bw && bx < ax + aw && ay < by + bh && by < ay + ah;
}

}  // namespace

SpaceInvaders::SpaceInvaders(ModeId mode) : flags_(decode_space_invaders_mode(mode)) {}

std::vector<Action> SpaceInvaders::minimal_actions(ModeId) {
  return {Action::kNoop, Action::kFire, Action::kRight, Action::kLeft, Action::kRightFire, Action::kLeftFire};
}

void SpaceInvaders::new_wave() {
  aliens_.fill(true);
  grid_x_ = kGridX;
  grid_y_ = kGridY;
  march_dir_ = 1;
  march_timer_ = 0;
  bombs_.clear();
}

void SpaceInvaders::reset(Rng&) {
  clear_terminal();
  frame_ = 0;
  new_wave();
  for (int p = 0; p < 2; ++p) cannons_[static_cast<std::size_t>(p)] = Cannon{kStartX[static_cast<std::size_t>(p)]};
  for (auto& s : shields_) s.fill(true);
  shield_offset_ = 0;
  shield_dir_ = 1;
  fire_owner_ = 0;
  turn_timer_ = 0;
  pool_ = kPooledLives;
}

int SpaceInvaders::aliens_alive() const {
  return static_cast<int>(std::count(aliens_.begin(), aliens_.end(), true));
}

bool SpaceInvaders::can_fire(int player) const {
  const auto& c = cannons_[static_cast<std::size_t>(player)];
  if (c.respawn > 0 || c.laser) return false;
  return !flags_.alternating_turns || fire_owner_ == player;
}

LivesVector SpaceInvaders::lives() const {
  if (pool_ <= 0) return {kEliminated, kEliminated};
  // Each player is guaranteed (pool - 1) / 2 further losses; the odd life in
  // the pool goes to whoever has lost fewer so far (seat 0 on a tie).
  const int spare = pool_ - 1;
  LivesVector out{spare / 2, spare / 2};
  if (spare % 2 == 1) {
    const int favored = cannons_[1].deaths < cannons_[0].deaths ? 1 : 0;
    ++out[static_cast<std::size_t>(favored)];
  }
  return out;
}

bool SpaceInvaders::hit_shield(int x, int y, int w, int h) {
  for (int s = 0; s < 3; ++s) {
    const int left = shield_left(s);
    for (int by = 0; by < kShieldBricksY; ++by) {
      for (int bx = 0; bx < kShieldBricksX; ++bx) {
        auto brick = shields_[static_cast<std::size_t>(s)][static_cast<std::size_t>(by * kShieldBricksX + bx)];
        if (!brick) continue;
        if (overlap(x, y, w, h, left + bx * kBrickPx, kShieldY + by * kBrickPx, kBrickPx, kBrickPx)) {
          shields_[static_cast<std::size_t>(s)][static_cast<std::size_t>(by * kShieldBricksX + bx)] = false;
          return true;
        }
      }
    }
  }
  return false;
}

void SpaceInvaders::march() {
  const int alive = aliens_alive();
  if (++march_timer_ < std::max(2, alive / 2)) return;
  march_timer_ = 0;
  int lo = Screen::kWidth;
  int hi = 0;
  for (int c = 0; c < kCols; ++c) {
    for (int r = 0; r < kRows; ++r) {
      if (!alien_alive(r, c)) continue;
      lo = std::min(lo, alien_x(c));
      hi = std::max(hi, alien_x(c) + kAlienW);
    }
  }
  const bool at_edge = (march_dir_ > 0 && hi + kMarchStep > Screen::kWidth - 4) ||
                       (march_dir_ < 0 && lo - kMarchStep < 4);
  if (at_edge) {
    march_dir_ = -march_dir_;
    grid_y_ += kDrop;
  } else {
    grid_x_ += march_dir_ * kMarchStep;
  }
}

StepOutcome SpaceInvaders::step(std::span<const Action> actions, Rng& rng) {
  StepOutcome out;
  out.rewards.assign(2, 0);
  ++frame_;

  if (flags_.moving_shields && frame_ % 2 == 0) {
    shield_offset_ += shield_dir_;
    if (shield_offset_ >= kShieldTravel || shield_offset_ <= -kShieldTravel) shield_dir_ = -shield_dir_;
  }

  // Cannons and fire. Only the current owner's fire is live under
  // alternating turns; a shot or a timeout hands the turn over.
  bool owner_fired = false;
  for (int p = 0; p < 2; ++p) {
    auto& c = cannons_[static_cast<std::size_t>(p)];
    if (c.respawn > 0) {
      if (--c.respawn == 0) c.x = kStartX[static_cast<std::size_t>(p)];
      continue;
    }
    const Joystick j = read_joystick(actions[static_cast<std::size_t>(p)]);
    c.x = std::clamp(c.x + j.dx * kCannonSpeed, 4, Screen::kWidth - 4 - kCannonW);
    if (j.fire && can_fire(p)) {
      c.laser = true;
      c.laser_x = c.x + kCannonW / 2;
      c.laser_y = kCannonY - kLaserH;
      if (flags_.alternating_turns) owner_fired = true;
    }
  }
  if (flags_.alternating_turns) {
    if (owner_fired || ++turn_timer_ >= kTurnFrames) {
      fire_owner_ = 1 - fire_owner_;
      turn_timer_ = 0;
    }
  }

  // Lasers.
  for (int p = 0; p < 2; ++p) {
    auto& c = cannons_[static_cast<std::size_t>(p)];
    if (!c.laser) continue;
    c.laser_y -= kLaserSpeed;
    if (c.laser_y + kLaserH < 0) {
      c.laser = false;
      continue;
    }
    if (hit_shield(c.laser_x, c.laser_y, 1, kLaserH)) {
      c.laser = false;
      continue;
    }
    for (int i = 0; i < kRows * kCols && c.laser; ++i) {
      const int r = i / kCols;
      const int col = i % kCols;
      if (!aliens_[static_cast<std::size_t>(i)]) continue;
      if (overlap(c.laser_x, c.laser_y, 1, kLaserH, alien_x(col), alien_y(r), kAlienW, kAlienH)) {
        aliens_[static_cast<std::size_t>(i)] = false;
        c.laser = false;
        out.rewards[static_cast<std::size_t>(p)] += kKillReward;
        out.progress = true;
      }
    }
  }

  march();

  // Bombs drop from the lowest alien of a random occupied column.
  if (static_cast<int>(bombs_.size()) < kMaxBombs && rng.chance(kBombChance)) {
    std::vector<int> columns;
    for (int c = 0; c < kCols; ++c) {
      for (int r = 0; r < kRows; ++r) {
        if (alien_alive(r, c)) {
          columns.push_back(c);
          break;
        }
      }
    }
    if (!columns.empty()) {
      const int c = columns[static_cast<std::size_t>(rng.below(static_cast<int>(columns.size())))];
      int r = kRows - 1;
      while (!alien_alive(r, c)) --r;
      bombs_.push_back({alien_x(c) + kAlienW / 2, alien_y(r) + kAlienH});
    }
  }
  const int bomb_speed = flags_.fast_bombs ? 2 * kBombSpeed : kBombSpeed;
  std::array<bool, 2> killed{};
  for (auto it = bombs_.begin(); it != bombs_.end();) {
    it->y += bomb_speed;
    if (flags_.zigzag_bombs) it->x = std::clamp(it->x + rng.between(-1, 1), 0, Screen::kWidth - 1);
    bool gone = it->y >= kCannonY + kCannonH || hit_shield(it->x, it->y, 1, kBombH);
    for (int p = 0; p < 2 && !gone; ++p) {
      const auto& c = cannons_[static_cast<std::size_t>(p)];
      if (c.respawn == 0 && overlap(it->x, it->y, 1, kBombH, c.x, kCannonY, kCannonW, kCannonH)) {
        killed[static_cast<std::size_t>(p)] = true;
        gone = true;
      }
    }
    it = gone ? bombs_.erase(it) : it + 1;
  }
  for (int p = 0; p < 2; ++p) {
    if (!killed[static_cast<std::size_t>(p)]) continue;
    auto& c = cannons_[static_cast<std::size_t>(p)];
    c.respawn = kRespawnFrames;
    c.laser = false;
    ++c.deaths;
    --pool_;
    out.progress = true;
    const auto& other = cannons_[static_cast<std::size_t>(1 - p)];
    if (!killed[static_cast<std::size_t>(1 - p)] && other.respawn == 0) {
      out.rewards[static_cast<std::size_t>(1 - p)] += kOpponentDeathReward;
    }
  }
  if (pool_ <= 0) {
    pool_ = 0;
    end(TerminalCause::kLives);
    return out;
  }

  for (int i = 0; i < kRows * kCols; ++i) {
    if (aliens_[static_cast<std::size_t>(i)] && alien_y(i / kCols) + kAlienH >= kInvasionY) {
      pool_ = 0;
      end(TerminalCause::kLives);
      return out;
    }
  }
  if (aliens_alive() == 0) new_wave();
  if (frame_ >= kFrameLimit) end(TerminalCause::kTime);
  return out;
}

void SpaceInvaders::render(Screen& screen) const {
  screen.clear(kBackground);
  screen.fill_rect(0, kCannonY + kCannonH + 2, Screen::kWidth, 2, kGroundColor);
  if (!flags_.invisible_invaders) {
    for (int r = 0; r < kRows; ++r) {
      for (int c = 0; c < kCols; ++c) {
        if (alien_alive(r, c)) screen.fill_rect(alien_x(c), alien_y(r), kAlienW, kAlienH, kAlienColor);
      }
    }
  }
  for (int s = 0; s < 3; ++s) {
    for (int i = 0; i < kShieldBricksX * kShieldBricksY; ++i) {
      if (!shields_[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]) continue;
      screen.fill_rect(shield_left(s) + (i % kShieldBricksX) * kBrickPx,
                       kShieldY + (i / kShieldBricksX) * kBrickPx, kBrickPx, kBrickPx, kShieldColor);
    }
  }
  for (const auto& b : bombs_) screen.fill_rect(b.x, b.y, 1, kBombH, kBombColor);
  for (int p = 0; p < 2; ++p) {
    const auto& c = cannons_[static_cast<std::size_t>(p)];
    if (c.respawn == 0) screen.fill_rect(c.x, kCannonY, kCannonW, kCannonH, kCannonColor[p]);
    if (c.laser) screen.fill_rect(c.laser_x, c.laser_y, 1, kLaserH, kLaserColor[p]);
  }
  draw_number(screen, 20, 6, pool_, kGroundColor);
  if (flags_.alternating_turns) {
    screen.fill_rect(fire_owner_ == 0 ? 60 : 96, 8, 4, 4, kCannonColor[fire_owner_]);
  }
}

std::vector<int> SpaceInvaders::features(int player) const {
  const auto& me = cannons_[static_cast<std::size_t>(player)];
  const int center = me.x + kCannonW / 2;
  int best = 1 << 20;
  int rel = 0;
  for (int c = 0; c < kCols; ++c) {
    for (int r = 0; r < kRows; ++r) {
      if (!alien_alive(r, c)) continue;
      const int d = alien_x(c) + kAlienW / 2 - center;
      if (std::abs(d) < std::abs(best)) best = d;
      break;
    }
  }
  if (best != (1 << 20)) rel = best < -4 ? 0 : best > 4 ? 2 : 1;
  bool threat = false;
  for (const auto& b : bombs_) {
    if (std::abs(b.x - center) <= 6 && b.y < kCannonY && b.y > kCannonY - 40) threat = true;
  }
  return {rel, threat ? 1 : 0, can_fire(player) ? 1 : 0};
}

}  // namespace maale
