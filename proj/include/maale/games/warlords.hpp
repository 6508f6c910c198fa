#pragma once

#include <array>

#include "maale/games/fixed_point.hpp"
#include "maale/games/game.hpp"

namespace maale {

// Four-player Warlords. Each corner holds a warlord behind an L-shaped band
// of bricks and a paddle that slides along an L track in front of it. A ball
// that reaches a warlord eliminates that player; the last one standing wins.
class Warlords final : public Game {
 public:
  static constexpr int kPlayers = 4;
  static constexpr int kTop = 24;
  static constexpr int kBottom = 192;
  static constexpr int kBrickPx = 4;
  static constexpr int kBrickGrid = 8;
  static constexpr int kWarlordLo = 4;
  static constexpr int kWarlordHi = 14;
  static constexpr int kTrack = 36;
  static constexpr int kPaddle = 8;
  static constexpr int kPaddleStep = 2;
  static constexpr int kTrackMin = 4;
  static constexpr int kTrackMax = 2 * kTrack - 4;
  static constexpr int kBallSize = 3;
  static constexpr fx::Fixed kBallSpeed = fx::from_px(2);
  static constexpr fx::Fixed kSpeedUp = fx::kOne / 8;
  static constexpr fx::Fixed kMaxSpeed = fx::kOne * 7 / 2;
  static constexpr int kPaddleCooldown = 6;
  static constexpr int kServePause = 30;
  static constexpr int kFrameLimit = 30'000;

  // Axis-aligned box in screen pixels.
  struct Box {
    int x;
    int y;
    int w;
    int h;
  };

  struct Ball {
    fx::Fixed x = 0;
    fx::Fixed y = 0;
    int dir = 4;  // compass32 index
    fx::Fixed speed = kBallSpeed;
  };

  explicit Warlords(ModeId mode);

  int num_players() const override { return kPlayers; }
  void reset(Rng& rng) override;
  StepOutcome step(std::span<const Action> actions, Rng& rng) override;
  void render(Screen& screen) const override;
  LivesVector lives() const override;
  std::vector<int> features(int player) const override;

  bool alive(int p) const { return alive_[static_cast<std::size_t>(p)]; }
  int alive_count() const;
  int bricks_left(int p) const;
  bool brick(int p, int i, int j) const { return bricks_[static_cast<std::size_t>(p)][static_cast<std::size_t>(j * kBrickGrid + i)]; }
  static bool brick_slot(int i, int j);
  int track_pos(int p) const { return track_[static_cast<std::size_t>(p)]; }
  const Ball& ball() const { return ball_; }
  int serve_timer() const { return serve_; }

  Box warlord_box(int p) const;
  Box brick_box(int p, int i, int j) const;
  Box paddle_box(int p) const;

  static std::vector<Action> minimal_actions(ModeId mode);

 private:
  // Maps a corner-local box (u from the side wall, v from the top or bottom
  // wall) to screen space.
  static Box local_box(int p, int u, int v, int w, int h);
  void serve(Rng& rng);
  void eliminate(int p);
  Box ball_box() const;

  std::array<bool, kPlayers> alive_{};
  std::array<std::array<bool, kBrickGrid * kBrickGrid>, kPlayers> bricks_{};
  std::array<int, kPlayers> track_{};
  Ball ball_;
  int serve_ = 0;
  int paddle_cooldown_ = 0;
  int frame_ = 0;
};

}  // namespace maale
