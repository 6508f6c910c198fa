#pragma once

#include <array>
#include <cstdint>

#include "maale/games/game.hpp"

namespace maale {

namespace othello {

// Bit index = row * 8 + col.
using Bitboard = std::uint64_t;

constexpr Bitboard bit(int col, int row) { return Bitboard{1} << (row * 8 + col); }

Bitboard legal_moves(Bitboard mover, Bitboard opponent);
// Discs flipped by placing at `square` (0..63); zero when the move is illegal.
Bitboard flips(Bitboard mover, Bitboard opponent, int square);

struct Position {
  Bitboard black = 0;  // seat 0, moves first
  Bitboard white = 0;
  int to_move = 0;

  static Position initial();
  Bitboard mine() const { return to_move == 0 ? black : white; }
  Bitboard theirs() const { return to_move == 0 ? white : black; }
  // Places for the side to move; returns false (no change) if illegal.
  bool play(int square);
};

}  // namespace othello

// Othello behind a joystick: each seat steers a cursor (one cell per
// kCursorDelay frames) and FIRE places a disc for the side to move.
class Othello final : public Game {
 public:
  static constexpr int kCursorDelay = 4;
  static constexpr int kBoardX = 16;
  static constexpr int kBoardY = 44;
  static constexpr int kCellPx = 16;

  explicit Othello(ModeId mode);

  int num_players() const override { return 2; }
  void reset(Rng& rng) override;
  StepOutcome step(std::span<const Action> actions, Rng& rng) override;
  void render(Screen& screen) const override;
  LivesVector lives() const override { return {0, 0}; }
  std::vector<int> features(int player) const override;
  int staller() const override { return terminal() ? -1 : position_.to_move; }

  const othello::Position& position() const { return position_; }
  std::array<int, 2> cursor(int player) const { return cursors_[static_cast<std::size_t>(player)]; }
  std::array<int, 2> disc_counts() const;
  int placements() const { return placements_; }

  static std::vector<Action> minimal_actions(ModeId mode);

 private:
  othello::Position position_;
  std::array<std::array<int, 2>, 2> cursors_{};
  std::array<int, 2> cooldown_{};
  int placements_ = 0;
};

}  // namespace maale
