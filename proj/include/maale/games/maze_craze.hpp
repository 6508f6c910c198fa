#pragma once

#include <array>
#include <vector>

#include "maale/games/game.hpp"
#include "maale/games/maze.hpp"
#include "maale/games/modes.hpp"

namespace maale {

// Two-player Maze Craze on a 15x10 perfect maze. Game types: race (n=0),
// robbers (n=1) and capture (n=11); visibility k hides walls away from the
// players (k=1: 5-cell radius, k=2: 3-cell radius, k=3: no walls drawn).
class MazeCraze final : public Game {
 public:
  static constexpr int kCellsX = 15;
  static constexpr int kCellsY = 10;
  static constexpr int kBlockW = 5;
  static constexpr int kBlockH = 8;
  static constexpr int kOriginX = 2;
  static constexpr int kOriginY = 24;
  static constexpr int kMoveDelay = 4;
  static constexpr int kRobberDelay = 20;
  static constexpr int kNumRobbers = 3;
  static constexpr int kMaxFakeWalls = 3;
  static constexpr int kFrameLimit = 10'000;

  static constexpr Rgb kWallColor{84, 70, 170};

  struct Runner {
    GridPoint cell;
    GridPoint last_cell;
    int cooldown = 0;
  };

  explicit MazeCraze(ModeId mode);

  int num_players() const override { return 2; }
  void reset(Rng& rng) override;
  StepOutcome step(std::span<const Action> actions, Rng& rng) override;
  void render(Screen& screen) const override;
  LivesVector lives() const override { return lives_; }
  std::vector<int> features(int player) const override;

  MazeCrazeMode mode() const { return mode_; }
  bool capture_family() const { return mode_.game_type == static_cast<int>(MazeCrazeType::kCapture); }
  bool has_robbers() const { return mode_.game_type != static_cast<int>(MazeCrazeType::kRace); }
  const WallGrid& walls() const { return walls_; }
  const std::array<Runner, 2>& runners() const { return runners_; }
  const std::vector<Runner>& robbers() const { return robbers_; }
  const std::vector<GridPoint>& fake_walls() const { return fake_walls_; }
  GridPoint exit_cell() const { return {kCellsX - 1, exit_row_}; }
  GridPoint exit_block() const { return {2 * kCellsX, 2 * exit_row_ + 1}; }
  int captured_mask(int player) const { return captured_[static_cast<std::size_t>(player)]; }
  int fake_walls_left(int player) const { return fakes_left_[static_cast<std::size_t>(player)]; }
  // Whether a wall block is drawn under the current visibility setting.
  bool block_visible(int bx, int by) const;

  static std::vector<Action> minimal_actions(ModeId mode);

 private:
  bool open_between(GridPoint from, GridPoint to) const;
  bool occupied(GridPoint cell) const;

  MazeCrazeMode mode_;
  WallGrid walls_;
  int exit_row_ = 0;
  std::array<Runner, 2> runners_{};
  std::vector<Runner> robbers_;
  std::vector<GridPoint> fake_walls_;
  std::array<int, 2> captured_{};
  std::array<int, 2> fakes_left_{};
  LivesVector lives_{0, 0};
  int frame_ = 0;
};

}  // namespace maale
