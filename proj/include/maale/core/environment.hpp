#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "maale/core/action.hpp"
#include "maale/core/rng.hpp"
#include "maale/core/screen.hpp"
#include "maale/core/types.hpp"
#include "maale/games/catalog.hpp"
#include "maale/games/game.hpp"

namespace maale {

// The multiplayer environment interface over one loaded game.
//
// Lifecycle: load() selects the game's default mode; reset() starts an
// episode; act() advances one frame with one action per player until
// game_over(). A handle is single-threaded but may be moved between threads.
class Environment {
 public:
  // Throws Error{kUnknownGame}.
  static Environment load(std::string_view name);

  Environment(Environment&&) noexcept = default;
  Environment& operator=(Environment&&) noexcept = default;
  ~Environment();

  const GameSpec& spec() const { return *spec_; }
  const std::string& name() const { return spec_->name; }

  // Sorted ascending. With num_players, only modes with exactly that count.
  std::vector<ModeId> available_modes(std::optional<int> num_players = std::nullopt) const;

  // Throws Error{kInvalidMode}. Takes effect at the next reset().
  void set_mode(ModeId mode);
  ModeId mode() const { return mode_; }
  int num_players() const;

  std::vector<Action> minimal_action_set() const;

  void set_stall_config(const StallConfig& config);
  const StallConfig& stall_config() const { return stall_; }

  // Throws Error{kUnsupportedMode} when the selected mode has no dynamics.
  void reset(std::uint64_t seed);

  // One frame. Throws Error{kArity}, Error{kGameOver} or Error{kModeNotSet}.
  RewardVector act(std::span<const Action> actions);

  LivesVector all_lives() const;
  bool game_over() const;
  TerminalCause terminal_cause() const;
  // Rendered lazily; repeated calls without act() return the same buffer.
  const Screen& screen_rgb() const;

  std::vector<int> features(int player) const;

  std::int64_t frame_number() const { return frame_; }
  int frames_since_progress() const { return since_progress_; }
  bool is_reset() const { return game_ != nullptr; }

  // Access to the running game for tests and tools; null before reset().
  const Game* game() const { return game_.get(); }

 private:
  explicit Environment(const GameSpec& spec);
  void require_reset(const char* op) const;

  const GameSpec* spec_ = nullptr;
  ModeId mode_;
  StallConfig stall_;
  Rng rng_;
  std::unique_ptr<Game> game_;
  std::int64_t frame_ = 0;
  int since_progress_ = 0;
  mutable Screen screen_;
  mutable bool screen_dirty_ = true;
};

}  // namespace maale
