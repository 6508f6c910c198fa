#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace maale {

// The 18 canonical joystick actions, in ALE order.
enum class Action : std::uint8_t {
  kNoop = 0,
  kFire,
  kUp,
  kRight,
  kLeft,
  kDown,
  kUpRight,
  kUpLeft,
  kDownRight,
  kDownLeft,
  kUpFire,
  kRightFire,
  kLeftFire,
  kDownFire,
  kUpRightFire,
  kUpLeftFire,
  kDownRightFire,
  kDownLeftFire,
};

inline constexpr int kNumActions = 18;

constexpr bool is_valid_action(int value) { return value >= 0 && value < kNumActions; }

constexpr int to_int(Action a) { return static_cast<int>(a); }

std::optional<Action> action_from_int(int value);
std::string_view action_name(Action a);

// Screen-space joystick reading: dy < 0 is up.
struct Joystick {
  int dx = 0;
  int dy = 0;
  bool fire = false;
};

constexpr Joystick read_joystick(Action a) {
  constexpr std::array<Joystick, kNumActions> table{{
      {0, 0, false},   {0, 0, true},   {0, -1, false}, {1, 0, false},
      {-1, 0, false},  {0, 1, false},  {1, -1, false}, {-1, -1, false},
      {1, 1, false},   {-1, 1, false}, {0, -1, true},  {1, 0, true},
      {-1, 0, true},   {0, 1, true},   {1, -1, true},  {-1, -1, true},
      {1, 1, true},    {-1, 1, true},
  }};
  return table[static_cast<std::size_t>(a)];
}

// Four-way reading used by grid games: any fire combination reads as a bare
// FIRE press and diagonals read as no input.
constexpr Joystick read_four_way(Action a) {
  Joystick j = read_joystick(a);
  if (j.fire) return {0, 0, true};
  if (j.dx != 0 && j.dy != 0) return {};
  return j;
}

}  // namespace maale
