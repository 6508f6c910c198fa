#include "maale/games/warlords.hpp"

#include <algorithm>
#include <cstdlib>

#include "maale/core/error.hpp"

namespace maale {

namespace {

constexpr Rgb kBackground{20, 20, 20};
constexpr Rgb kBallColor{236, 236, 236};
constexpr Rgb kWarlordColor[4] = {{220, 60, 60}, {60, 110, 230}, {60, 200, 110}, {230, 200, 60}};
constexpr Rgb kBrickColor[4] = {{150, 40, 40}, {40, 75, 160}, {40, 140, 75}, {160, 140, 40}};
constexpr Rgb kPaddleColor[4] = {{255, 160, 160}, {160, 190, 255}, {160, 240, 190}, {255, 240, 160}};

bool right_side(int p) { return p % 2 == 1; }
bool bottom_side(int p) { return p >= 2; }

bool overlap(const Warlords::Box& a, const Warlords::Box& b) {
  return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

// Index mirrored across the vertical axis (x flips).
int reflect_x(int d) { return ((16 - d) % 32 + 32) % 32; }
// Index mirrored across the horizontal axis (y flips).
int reflect_y(int d) { return ((32 - d) % 32 + 32) % 32; }

}  // namespace

Warlords::Warlords(ModeId mode) {
  if (mode.value != 1) throw Error(ErrorCode::kInvalidMode, "warlords supports mode 1 only");
}

std::vector<Action> Warlords::minimal_actions(ModeId) {
  return {Action::kNoop, Action::kRight, Action::kLeft};
}

bool Warlords::brick_slot(int i, int j) {
  const int m = std::max(i, j);
  return m == 5 || m == 6;
}

Warlords::Box Warlords::local_box(int p, int u, int v, int w, int h) {
  const int x = right_side(p) ? Screen::kWidth - u - w : u;
  const int y = bottom_side(p) ? kBottom - v - h : kTop + v;
  return {x, y, w, h};
}

Warlords::Box Warlords::warlord_box(int p) const {
  return local_box(p, kWarlordLo, kWarlordLo, kWarlordHi - kWarlordLo, kWarlordHi - kWarlordLo);
}

Warlords::Box Warlords::brick_box(int p, int i, int j) const {
  return local_box(p, i * kBrickPx, j * kBrickPx, kBrickPx, kBrickPx);
}

// The track runs along v = kTrack for t <= kTrack, then along u = kTrack.
Warlords::Box Warlords::paddle_box(int p) const {
  const int t = track_[static_cast<std::size_t>(p)];
  const int u = t <= kTrack ? t : kTrack;
  const int v = t <= kTrack ? kTrack : 2 * kTrack - t;
  return local_box(p, u - kPaddle / 2, v - kPaddle / 2, kPaddle, kPaddle);
}

Warlords::Box Warlords::ball_box() const {
  return {fx::to_px(ball_.x), fx::to_px(ball_.y), kBallSize, kBallSize};
}

void Warlords::serve(Rng& rng) {
  ball_.x = fx::from_px(Screen::kWidth / 2 - 1);
  ball_.y = fx::from_px((kTop + kBottom) / 2 - 1);
  // Diagonal-ish directions only: at least 22.5 degrees off both axes.
  int d = 0;
  do {
    d = rng.below(32);
  } while (d % 8 == 0 || d % 8 == 1 || d % 8 == 7);
  ball_.dir = d;
  ball_.speed = kBallSpeed;
  serve_ = kServePause;
  paddle_cooldown_ = 0;
}

void Warlords::reset(Rng& rng) {
  clear_terminal();
  frame_ = 0;
  alive_.fill(true);
  for (auto& b : bricks_) {
    for (int j = 0; j < kBrickGrid; ++j) {
      for (int i = 0; i < kBrickGrid; ++i) b[static_cast<std::size_t>(j * kBrickGrid + i)] = brick_slot(i, j);
    }
  }
  track_.fill(kTrack);
  serve(rng);
}

int Warlords::alive_count() const { return static_cast<int>(std::count(alive_.begin(), alive_.end(), true)); }

int Warlords::bricks_left(int p) const {
  const auto& b = bricks_[static_cast<std::size_t>(p)];
  return static_cast<int>(std::count(b.begin(), b.end(), true));
}

LivesVector Warlords::lives() const {
  LivesVector out(kPlayers, 0);
  for (int p = 0; p < kPlayers; ++p) {
    if (!alive(p)) out[static_cast<std::size_t>(p)] = kEliminated;
  }
  return out;
}

void Warlords::eliminate(int p) {
  alive_[static_cast<std::size_t>(p)] = false;
  bricks_[static_cast<std::size_t>(p)].fill(false);
}

StepOutcome Warlords::step(std::span<const Action> actions, Rng& rng) {
  StepOutcome out;
  out.rewards.assign(kPlayers, 0);
  ++frame_;

  for (int p = 0; p < kPlayers; ++p) {
    if (!alive(p)) continue;
    const Joystick j = read_joystick(actions[static_cast<std::size_t>(p)]);
    auto& t = track_[static_cast<std::size_t>(p)];
    t = std::clamp(t + j.dx * kPaddleStep, kTrackMin, kTrackMax);
  }

  if (serve_ > 0) {
    --serve_;
  } else {
    const Box before = ball_box();
    const fx::Unit u = fx::compass32(ball_.dir);
    ball_.x += fx::scale(ball_.speed, u.x);
    ball_.y += fx::scale(ball_.speed, u.y);
    const int max_x = fx::from_px(Screen::kWidth - kBallSize);
    const int min_y = fx::from_px(kTop);
    const int max_y = fx::from_px(kBottom - kBallSize);
    if (ball_.x < 0 || ball_.x > max_x) {
      ball_.x = std::clamp(ball_.x, 0, max_x);
      ball_.dir = reflect_x(ball_.dir);
    }
    if (ball_.y < min_y || ball_.y > max_y) {
      ball_.y = std::clamp(ball_.y, min_y, max_y);
      ball_.dir = reflect_y(ball_.dir);
    }
    if (paddle_cooldown_ > 0) --paddle_cooldown_;

    const Box b = ball_box();
    bool handled = false;
    for (int p = 0; p < kPlayers && !handled; ++p) {
      if (!alive(p)) continue;
      if (overlap(b, warlord_box(p))) {
        eliminate(p);
        out.rewards[static_cast<std::size_t>(p)] -= 1;
        out.progress = true;
        serve(rng);
        handled = true;
        break;
      }
      for (int k = 0; k < kBrickGrid * kBrickGrid && !handled; ++k) {
        const int i = k % kBrickGrid;
        const int j = k / kBrickGrid;
        if (!brick(p, i, j)) continue;
        const Box box = brick_box(p, i, j);
        if (!overlap(b, box)) continue;
        bricks_[static_cast<std::size_t>(p)][static_cast<std::size_t>(k)] = false;
        const bool was_beside = before.y < box.y + box.h && box.y < before.y + before.h;
        ball_.dir = was_beside ? reflect_x(ball_.dir) : reflect_y(ball_.dir);
        out.progress = true;
        handled = true;
      }
      if (!handled && paddle_cooldown_ == 0 && overlap(b, paddle_box(p))) {
        // Send the ball away from this corner with a random spread.
        const int sx = right_side(p) ? -1 : 1;
        const int sy = bottom_side(p) ? -1 : 1;
        int d = 4 + rng.between(-2, 2);
        if (sx < 0) d = reflect_x(d);
        if (sy < 0) d = reflect_y(d);
        ball_.dir = d;
        ball_.speed = std::min(ball_.speed + kSpeedUp, kMaxSpeed);
        paddle_cooldown_ = kPaddleCooldown;
        handled = true;
      }
    }
  }

  if (alive_count() == 1) {
    for (int p = 0; p < kPlayers; ++p) {
      if (alive(p)) out.rewards[static_cast<std::size_t>(p)] += 1;
    }
    end(TerminalCause::kLives);
    return out;
  }
  if (frame_ >= kFrameLimit) {
    // Rank the survivors by remaining bricks; lowest seat wins ties.
    int winner = -1;
    for (int p = 0; p < kPlayers; ++p) {
      if (alive(p) && (winner < 0 || bricks_left(p) > bricks_left(winner))) winner = p;
    }
    for (int p = 0; p < kPlayers; ++p) {
      if (!alive(p) || p == winner) continue;
      out.rewards[static_cast<std::size_t>(p)] -= 1;
      eliminate(p);
    }
    out.rewards[static_cast<std::size_t>(winner)] += 1;
    end(TerminalCause::kTime);
  }
  return out;
}

void Warlords::render(Screen& screen) const {
  screen.clear(kBackground);
  for (int p = 0; p < kPlayers; ++p) {
    if (!alive(p)) continue;
    for (int j = 0; j < kBrickGrid; ++j) {
      for (int i = 0; i < kBrickGrid; ++i) {
        if (!brick(p, i, j)) continue;
        const Box b = brick_box(p, i, j);
        screen.fill_rect(b.x, b.y, b.w, b.h, kBrickColor[p]);
      }
    }
    const Box w = warlord_box(p);
    screen.fill_rect(w.x, w.y, w.w, w.h, kWarlordColor[p]);
    const Box pb = paddle_box(p);
    screen.fill_rect(pb.x, pb.y, pb.w, pb.h, kPaddleColor[p]);
  }
  const Box b = ball_box();
  screen.fill_rect(b.x, b.y, b.w, b.h, kBallColor);
}

std::vector<int> Warlords::features(int player) const {
  const Box b = ball_box();
  const int cx = b.x + kBallSize / 2;
  const int cy = b.y + kBallSize / 2;
  const int u = right_side(player) ? Screen::kWidth - cx : cx;
  const int v = bottom_side(player) ? kBottom - cy : cy - kTop;
  // Project the ball onto this player's paddle track.
  const int t_ball = u <= v ? std::min(u, kTrack) : 2 * kTrack - std::min(v, kTrack);
  const int rel = t_ball - track_pos(player);
  const int rel_bin = rel < -12 ? 0 : rel < -6 ? 1 : rel < -2 ? 2 : rel <= 2 ? 3 : rel <= 6 ? 4 : rel <= 12 ? 5 : 6;
  const fx::Unit dir = fx::compass32(ball_.dir);
  const int du = right_side(player) ? -dir.x : dir.x;
  const int dv = bottom_side(player) ? -dir.y : dir.y;
  const bool approaching = du * u + dv * v < 0;
  const int reach = std::max(u, v);
  return {rel_bin, approaching ? 1 : 0, reach < 60 ? 0 : reach < 100 ? 1 : 2};
}

}  // namespace maale
