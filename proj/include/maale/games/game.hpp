#pragma once

#include <memory>
#include <span>
#include <vector>

#include "maale/core/action.hpp"
#include "maale/core/rng.hpp"
#include "maale/core/screen.hpp"
#include "maale/core/types.hpp"

namespace maale {

struct StepOutcome {
  RewardVector rewards;
  // A game-progress event happened this frame (used by the stall clock).
  bool progress = false;
};

// One-frame transition system for a single game variant. Instances are built
// for a fixed mode; reset() draws a fresh initial state from the rng.
class Game {
 public:
  virtual ~Game() = default;

  virtual int num_players() const = 0;
  virtual void reset(Rng& rng) = 0;
  // Precondition: !terminal() and actions.size() == num_players().
  virtual StepOutcome step(std::span<const Action> actions, Rng& rng) = 0;
  virtual void render(Screen& screen) const = 0;
  virtual LivesVector lives() const = 0;

  // Compact per-player state summary: small non-negative integers, each a
  // coarse bucket of some piece of game state seen from `player`'s seat.
  virtual std::vector<int> features(int player) const = 0;

  // Seat whose inaction currently stalls the game, or -1 if nobody can.
  virtual int staller() const { return -1; }

  bool terminal() const { return cause_ != TerminalCause::kNone; }
  TerminalCause terminal_cause() const { return cause_; }
  void end(TerminalCause cause) { cause_ = cause; }

 protected:
  void clear_terminal() { cause_ = TerminalCause::kNone; }

 private:
  TerminalCause cause_ = TerminalCause::kNone;
};

}  // namespace maale
