#pragma once

#include <array>

#include "maale/games/fixed_point.hpp"
#include "maale/games/game.hpp"
#include "maale/games/modes.hpp"

namespace maale {

// Two-player Combat: tanks on a walled field (optional maze, billiard shots,
// invisible tanks) or wrapping planes (optional guided missiles, jets).
class Combat final : public Game {
 public:
  static constexpr int kMatchFrames = 3'600;
  static constexpr int kCell = 8;
  static constexpr int kCols = 20;
  static constexpr int kRows = 21;
  static constexpr int kFieldTop = 24;
  static constexpr int kTankHalf = 4;
  static constexpr int kSpriteHalf = 6;
  static constexpr int kTurnDelay = 4;
  static constexpr int kFlashFrames = 8;
  static constexpr fx::Fixed kTankSpeed = fx::kOne;
  static constexpr fx::Fixed kBiplaneSpeed = fx::kOne * 3 / 2;
  static constexpr fx::Fixed kJetSpeed = 2 * fx::kOne;
  static constexpr fx::Fixed kShotSpeed = 3 * fx::kOne;

  struct Shot {
    bool active = false;
    fx::Fixed x = 0;
    fx::Fixed y = 0;
    fx::Fixed vx = 0;
    fx::Fixed vy = 0;
    int life = 0;
    int bounces = 0;
  };

  struct Vehicle {
    fx::Fixed x = 0;  // centre
    fx::Fixed y = 0;
    int heading = 0;  // 0..15, clockwise from +x
    int turn_cooldown = 0;
    int flash = 0;    // frames left visible in invisible mode
    bool fired = false;     // this frame
    bool collided = false;  // this frame
    Shot shot;
  };

  explicit Combat(ModeId mode);

  int num_players() const override { return 2; }
  void reset(Rng& rng) override;
  StepOutcome step(std::span<const Action> actions, Rng& rng) override;
  void render(Screen& screen) const override;
  LivesVector lives() const override { return {0, 0}; }
  std::vector<int> features(int player) const override;

  const CombatFlags& flags() const { return flags_; }
  const std::array<Vehicle, 2>& vehicles() const { return vehicles_; }
  const std::array<int, 2>& scores() const { return scores_; }
  int frame() const { return frame_; }
  bool wall_cell(int col, int row) const;
  // Screen rectangle (x, y, w, h) that a vehicle's sprite may cover.
  std::array<int, 4> sprite_rect(int player) const;
  bool vehicle_visible(int player) const;

  static std::vector<Action> minimal_actions(ModeId mode);

 private:
  bool is_tank() const { return flags_.style == CombatStyle::kTank; }
  bool blocked(fx::Fixed cx, fx::Fixed cy, int self) const;
  bool solid_at(fx::Fixed x, fx::Fixed y) const;
  void spawn(int player);
  void launch(int player);
  // Returns true when the shot touched the opponent this frame.
  bool advance_shot(int player);

  CombatFlags flags_;
  std::array<Vehicle, 2> vehicles_{};
  std::array<int, 2> scores_{};
  std::array<std::array<bool, kCols>, kRows> walls_{};
  int frame_ = 0;
};

}  // namespace maale
