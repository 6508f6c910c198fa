#pragma once

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

namespace maale {

// Small integer naming a game variant. The encoding is game specific.
struct ModeId {
  int value = 0;

  constexpr ModeId() = default;
  constexpr explicit ModeId(int v) : value(v) {}

  friend constexpr auto operator<=>(ModeId, ModeId) = default;
};

inline constexpr int kMaxModeId = 64;

// Per-player rewards for one frame (or one skipped step).
using RewardVector = std::vector<int>;

// Per-player remaining lives. 0 means alive on the last life; an eliminated
// player reports -1.
using LivesVector = std::vector<int>;

inline constexpr int kEliminated = -1;

enum class TerminalCause : std::uint8_t {
  kNone = 0,
  kScoreLimit,
  kLives,
  kTime,
  kStall,
};

std::string_view terminal_cause_name(TerminalCause cause);

struct StallConfig {
  bool enabled = true;
  int threshold_frames = 300;
  // Paid to the stalling player; every other player receives the negation.
  int forfeit_reward = -1;
};

}  // namespace maale
