#include "maale/games/othello.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "maale/core/error.hpp"

namespace maale {

namespace othello {

namespace {

constexpr Bitboard kFileA = 0x0101010101010101ULL;
constexpr Bitboard kFileH = 0x8080808080808080ULL;

// Directions: N, S, E, W, NE, NW, SE, SW.
Bitboard shift(Bitboard b, int dir) {
  switch (dir) {
    case 0: return b >> 8;
    case 1: return b << 8;
    case 2: return (b << 1) & ~kFileA;
    case 3: return (b >> 1) & ~kFileH;
    case 4: return (b >> 7) & ~kFileA;
    case 5: return (b >> 9) & ~kFileH;
    case 6: return (b << 9) & ~kFileA;
    default: return (b << 7) & ~kFileH;
  }
}

}  // namespace

Bitboard legal_moves(Bitboard mover, Bitboard opponent) {
  const Bitboard empty = ~(mover | opponent);
  Bitboard moves = 0;
  for (int dir = 0; dir < 8; ++dir) {
    Bitboard run = shift(mover, dir) & opponent;
    for (int i = 0; i < 5; ++i) run |= shift(run, dir) & opponent;
    moves |= shift(run, dir) & empty;
  }
  return moves;
}

Bitboard flips(Bitboard mover, Bitboard opponent, int square) {
  const Bitboard origin = Bitboard{1} << square;
  if ((mover | opponent) & origin) return 0;
  Bitboard flipped = 0;
  for (int dir = 0; dir < 8; ++dir) {
    Bitboard run = 0;
    Bitboard t = shift(origin, dir);
    while (t & opponent) {
      run |= t;
      t = shift(t, dir);
    }
    if (t & mover) flipped |= run;
  }
  return flipped;
}

Position Position::initial() {
  Position p;
  p.white = bit(3, 3) | bit(4, 4);
  p.black = bit(4, 3) | bit(3, 4);
  p.to_move = 0;
  return p;
}

bool Position::play(int square) {
  const Bitboard f = flips(mine(), theirs(), square);
  if (f == 0) return false;
  const Bitboard placed = Bitboard{1} << square;
  if (to_move == 0) {
    black |= placed | f;
    white &= ~f;
  } else {
    white |= placed | f;
    black &= ~f;
  }
  to_move = 1 - to_move;
  return true;
}

}  // namespace othello

namespace {

constexpr Rgb kBackdrop{30, 30, 30};
constexpr Rgb kBoardColor{20, 120, 60};
constexpr Rgb kGridColor{10, 70, 30};
constexpr Rgb kDiscColor[2] = {{16, 16, 16}, {236, 236, 236}};
constexpr Rgb kCursorColor[2] = {{220, 60, 60}, {60, 110, 230}};

}  // namespace

Othello::Othello(ModeId mode) {
  if (mode.value != 1) {
    throw Error(ErrorCode::kInvalidMode, "invalid mode " + std::to_string(mode.value) +
                                             " for game othello");
  }
}

std::vector<Action> Othello::minimal_actions(ModeId) {
  return {Action::kNoop, Action::kFire, Action::kUp, Action::kRight, Action::kLeft, Action::kDown};
}

void Othello::reset(Rng& /*rng*/) {
  clear_terminal();
  position_ = othello::Position::initial();
  cursors_ = {{{3, 3}, {3, 3}}};
  cooldown_ = {0, 0};
  placements_ = 0;
}

std::array<int, 2> Othello::disc_counts() const {
  return {std::popcount(position_.black), std::popcount(position_.white)};
}

StepOutcome Othello::step(std::span<const Action> actions, Rng& /*rng*/) {
  StepOutcome out;
  out.rewards.assign(2, 0);

  for (int p = 0; p < 2; ++p) {
    const Joystick j = read_four_way(actions[static_cast<std::size_t>(p)]);
    auto& cd = cooldown_[static_cast<std::size_t>(p)];
    auto& cur = cursors_[static_cast<std::size_t>(p)];
    if (cd > 0) {
      --cd;
    } else if (j.dx != 0 || j.dy != 0) {
      cur[0] = std::clamp(cur[0] + j.dx, 0, 7);
      cur[1] = std::clamp(cur[1] + j.dy, 0, 7);
      cd = kCursorDelay - 1;
    }
  }

  const int mover = position_.to_move;
  const Joystick j = read_four_way(actions[static_cast<std::size_t>(mover)]);
  if (!j.fire) return out;
  const auto& cur = cursors_[static_cast<std::size_t>(mover)];
  if (!position_.play(cur[1] * 8 + cur[0])) return out;

  out.progress = true;
  ++placements_;
  if (othello::legal_moves(position_.mine(), position_.theirs()) == 0) {
    // Forced pass; the game ends when neither side can move.
    position_.to_move = 1 - position_.to_move;
    if (othello::legal_moves(position_.mine(), position_.theirs()) == 0) {
      const auto counts = disc_counts();
      if (counts[0] != counts[1]) {
        const int winner = counts[0] > counts[1] ? 0 : 1;
        out.rewards[static_cast<std::size_t>(winner)] = 1;
        out.rewards[static_cast<std::size_t>(1 - winner)] = -1;
      }
      end(TerminalCause::kScoreLimit);
    }
  }
  return out;
}

void Othello::render(Screen& screen) const {
  screen.clear(kBackdrop);
  const auto counts = disc_counts();
  draw_number(screen, 24, 8, counts[0], kCursorColor[0]);
  draw_number(screen, 112, 8, counts[1], kCursorColor[1]);
  // Side-to-move marker.
  screen.fill_rect(position_.to_move == 0 ? 16 : 140, 30, 6, 6, kCursorColor[position_.to_move]);

  screen.fill_rect(kBoardX, kBoardY, 8 * kCellPx, 8 * kCellPx, kBoardColor);
  for (int i = 0; i <= 8; ++i) {
    screen.fill_rect(kBoardX + i * kCellPx, kBoardY, 1, 8 * kCellPx, kGridColor);
    screen.fill_rect(kBoardX, kBoardY + i * kCellPx, 8 * kCellPx, 1, kGridColor);
  }
  for (int sq = 0; sq < 64; ++sq) {
    const othello::Bitboard b = othello::Bitboard{1} << sq;
    const int x = kBoardX + (sq % 8) * kCellPx + 3;
    const int y = kBoardY + (sq / 8) * kCellPx + 3;
    if (position_.black & b) screen.fill_rect(x, y, 10, 10, kDiscColor[0]);
    if (position_.white & b) screen.fill_rect(x, y, 10, 10, kDiscColor[1]);
  }
  for (int p = 0; p < 2; ++p) {
    const auto& cur = cursors_[static_cast<std::size_t>(p)];
    const int x = kBoardX + cur[0] * kCellPx;
    const int y = kBoardY + cur[1] * kCellPx;
    const Rgb c = kCursorColor[p];
    const int inset = p;  // keep both outlines visible on a shared cell
    screen.fill_rect(x + inset, y + inset, kCellPx - 2 * inset, 1, c);
    screen.fill_rect(x + inset, y + kCellPx - 1 - inset, kCellPx - 2 * inset, 1, c);
    screen.fill_rect(x + inset, y + inset, 1, kCellPx - 2 * inset, c);
    screen.fill_rect(x + kCellPx - 1 - inset, y + inset, 1, kCellPx - 2 * inset, c);
  }
}

std::vector<int> Othello::features(int player) const {
  const bool my_turn = position_.to_move == player && !terminal();
  const auto& cur = cursors_[static_cast<std::size_t>(player)];
  int on_legal = 0;
  int dx = 1;
  int dy = 1;
  if (my_turn) {
    const othello::Bitboard moves = othello::legal_moves(position_.mine(), position_.theirs());
    on_legal = (moves & othello::bit(cur[0], cur[1])) ? 1 : 0;
    int best = 1 << 20;
    for (int sq = 0; sq < 64; ++sq) {
      if (!(moves & (othello::Bitboard{1} << sq))) continue;
      const int ex = sq % 8 - cur[0];
      const int ey = sq / 8 - cur[1];
      const int d = std::abs(ex) + std::abs(ey);
      if (d < best) {
        best = d;
        dx = (ex > 0) - (ex < 0) + 1;
        dy = (ey > 0) - (ey < 0) + 1;
      }
    }
  }
  return {my_turn ? 1 : 0, on_legal, dx, dy};
}

}  // namespace maale
