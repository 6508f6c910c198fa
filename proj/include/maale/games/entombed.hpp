#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "maale/games/game.hpp"
#include "maale/games/maze.hpp"
#include "maale/games/modes.hpp"

namespace maale {

// Two-player Entombed: a maze scrolls upward and players must keep moving down
// to avoid being crushed at the top edge. FIRE plus a direction spends a
// make-break charge to add or remove a block. Competitive play rewards
// outlasting the opponent; cooperative play rewards sections passed and
// shared stage restarts.
class Entombed final : public Game {
 public:
  static constexpr int kCols = 20;
  static constexpr int kCellPx = 8;
  static constexpr int kViewRows = 21;
  static constexpr int kTopY = 24;
  static constexpr int kScrollFrames = 40;
  static constexpr int kMoveDelay = 5;
  static constexpr int kStageCellsX = 9;
  static constexpr int kStageCellsY = 15;
  static constexpr int kStageRows = 2 * kStageCellsY;
  static constexpr int kSections = 5;
  static constexpr int kSectionRows = kStageRows / kSections;
  static constexpr int kPowerUpsPerStage = 2;
  static constexpr int kMaxCharges = 3;
  static constexpr int kBlockCooldown = 10;
  static constexpr int kStartLives = 2;
  static constexpr int kHeadroom = 4;
  static constexpr int kFrameLimit = 20'000;
  static constexpr std::array<int, 2> kStartCols{3, 15};

  enum Cell : std::uint8_t { kOpen = 0, kWall = 1, kPowerUp = 2 };

  struct Explorer {
    GridPoint pos;  // x: column, y: absolute row
    int cooldown = 0;
    int block_cooldown = 0;
    int charges = 0;
  };

  explicit Entombed(ModeId mode);

  int num_players() const override { return 2; }
  void reset(Rng& rng) override;
  StepOutcome step(std::span<const Action> actions, Rng& rng) override;
  void render(Screen& screen) const override;
  LivesVector lives() const override { return lives_; }
  std::vector<int> features(int player) const override;

  EntombedPlay play() const { return play_; }
  int scroll() const { return scroll_; }
  int stage_start() const { return stage_start_; }
  int sections_passed() const { return sections_passed_; }
  const std::array<Explorer, 2>& explorers() const { return explorers_; }
  // Cell at an absolute row; rows above the generated area read as wall.
  Cell cell(int col, int row) const;
  int generated_rows() const { return static_cast<int>(rows_.size()); }
  // Whether `player` can still reach the bottom generated row without
  // leaving the visible area from the top.
  bool has_escape(int player) const;

  static std::vector<Action> minimal_actions(ModeId mode);

 private:
  void generate_stage(Rng& rng);
  void ensure_rows(Rng& rng);
  void place_at_stage_start();
  bool open(int col, int row) const { return cell(col, row) != kWall; }

  EntombedPlay play_;
  std::vector<std::array<Cell, kCols>> rows_;
  std::array<Explorer, 2> explorers_{};
  LivesVector lives_{kStartLives, kStartLives};
  int scroll_ = 0;
  int scroll_timer_ = 0;
  int stage_start_ = 0;
  int sections_passed_ = 0;
  int frame_ = 0;
};

}  // namespace maale
