#pragma once

#include <array>
#include <vector>

#include "maale/games/game.hpp"
#include "maale/games/modes.hpp"

namespace maale {

// Two cannons defend against a marching 6x6 alien grid. Players share a pool
// of three lives; a kill scores +10 for the shooter and a cannon destroyed by
// an alien bomb scores +20 for the surviving opponent.
class SpaceInvaders final : public Game {
 public:
  static constexpr int kRows = 6;
  static constexpr int kCols = 6;
  static constexpr int kAlienW = 8;
  static constexpr int kAlienH = 6;
  static constexpr int kAlienDx = 16;
  static constexpr int kAlienDy = 12;
  static constexpr int kGridX = 20;
  static constexpr int kGridY = 40;
  static constexpr int kMarchStep = 2;
  static constexpr int kDrop = 4;
  static constexpr int kInvasionY = 176;
  static constexpr int kCannonY = 180;
  static constexpr int kCannonW = 8;
  static constexpr int kCannonH = 6;
  static constexpr int kCannonSpeed = 2;
  static constexpr int kLaserSpeed = 4;
  static constexpr int kLaserH = 4;
  static constexpr int kBombSpeed = 1;
  static constexpr int kBombH = 4;
  static constexpr int kMaxBombs = 6;
  static constexpr double kBombChance = 0.02;
  static constexpr int kShieldY = 160;
  static constexpr int kShieldBricksX = 8;
  static constexpr int kShieldBricksY = 4;
  static constexpr int kBrickPx = 2;
  static constexpr int kShieldTravel = 16;
  static constexpr std::array<int, 3> kShieldCenters{28, 80, 132};
  static constexpr int kRespawnFrames = 60;
  static constexpr int kTurnFrames = 120;
  static constexpr int kPooledLives = 3;
  static constexpr int kKillReward = 10;
  static constexpr int kOpponentDeathReward = 20;
  static constexpr int kFrameLimit = 20'000;

  static constexpr Rgb kAlienColor{180, 220, 80};

  struct Cannon {
    int x = 0;
    int respawn = 0;  // frames until the cannon returns; 0 when active
    int deaths = 0;
    bool laser = false;
    int laser_x = 0;
    int laser_y = 0;
  };

  struct Bomb {
    int x = 0;
    int y = 0;
  };

  explicit SpaceInvaders(ModeId mode);

  int num_players() const override { return 2; }
  void reset(Rng& rng) override;
  StepOutcome step(std::span<const Action> actions, Rng& rng) override;
  void render(Screen& screen) const override;
  LivesVector lives() const override;
  std::vector<int> features(int player) const override;

  const SpaceInvadersFlags& flags() const { return flags_; }
  // Seat whose fire button is live under alternating turns.
  int fire_owner() const { return fire_owner_; }
  int turn_timer() const { return turn_timer_; }
  int pool() const { return pool_; }
  int aliens_alive() const;
  bool alien_alive(int row, int col) const { return aliens_[static_cast<std::size_t>(row * kCols + col)]; }
  int alien_x(int col) const { return grid_x_ + col * kAlienDx; }
  int alien_y(int row) const { return grid_y_ + row * kAlienDy; }
  const std::array<Cannon, 2>& cannons() const { return cannons_; }
  const std::vector<Bomb>& bombs() const { return bombs_; }
  int shield_offset() const { return shield_offset_; }
  bool can_fire(int player) const;

  static std::vector<Action> minimal_actions(ModeId mode);

 private:
  void new_wave();
  int shield_left(int s) const { return kShieldCenters[static_cast<std::size_t>(s)] - kShieldBricksX + shield_offset_; }
  // Clears the first intact shield brick overlapping the box; true if one was hit.
  bool hit_shield(int x, int y, int w, int h);
  void march();

  SpaceInvadersFlags flags_;
  std::array<bool, kRows * kCols> aliens_{};
  int grid_x_ = kGridX;
  int grid_y_ = kGridY;
  int march_dir_ = 1;
  int march_timer_ = 0;
  std::array<Cannon, 2> cannons_{};
  std::vector<Bomb> bombs_;
  std::array<std::array<bool, kShieldBricksX * kShieldBricksY>, 3> shields_{};
  int shield_offset_ = 0;
  int shield_dir_ = 1;
  int fire_owner_ = 0;
  int turn_timer_ = 0;
  int pool_ = kPooledLives;
  int frame_ = 0;
};

}  // namespace maale
