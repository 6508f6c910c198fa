#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maale/core/types.hpp"

namespace maale {

// Combat -------------------------------------------------------------------

enum class CombatStyle { kTank, kPlane };

struct CombatFlags {
  CombatStyle style = CombatStyle::kTank;
  // Tank options.
  bool maze = false;
  bool billiards = false;
  bool invisible = false;
  // Plane options.
  bool guided = false;
  bool jet = false;

  static CombatFlags tank(bool maze, bool billiards, bool invisible) {
    return {CombatStyle::kTank, maze, billiards, invisible, false, false};
  }
  static CombatFlags plane(bool guided, bool jet) {
    return {CombatStyle::kPlane, false, false, false, guided, jet};
  }

  friend bool operator==(const CombatFlags&, const CombatFlags&) = default;
};

// Throws Error{kInvalidMode} for option combinations that have no mode.
ModeId combat_mode(const CombatFlags& flags);
CombatFlags decode_combat_mode(ModeId mode);
const std::vector<ModeId>& combat_mode_ids();

// Space Invaders -------------------------------------------------------------

struct SpaceInvadersFlags {
  bool moving_shields = false;
  bool zigzag_bombs = false;
  bool fast_bombs = false;
  bool invisible_invaders = false;
  bool alternating_turns = false;

  friend bool operator==(const SpaceInvadersFlags&, const SpaceInvadersFlags&) = default;
};

inline constexpr int kSpaceInvadersBaseMode = 33;

ModeId space_invaders_mode(const SpaceInvadersFlags& flags);
// Throws Error{kInvalidMode} outside [33, 64].
SpaceInvadersFlags decode_space_invaders_mode(ModeId mode);

// Maze Craze -----------------------------------------------------------------

enum class MazeCrazeType { kRace = 0, kRobbers = 1, kCapture = 11 };

struct MazeCrazeMode {
  int game_type = 0;   // n
  int visibility = 0;  // k in [0, 3]

  friend bool operator==(const MazeCrazeMode&, const MazeCrazeMode&) = default;
};

const std::vector<int>& maze_craze_game_types();
// 4n + k. Throws Error{kInvalidMode} for unsupported n or k outside [0, 3].
ModeId maze_craze_mode(int game_type, int visibility);
MazeCrazeMode decode_maze_craze_mode(ModeId mode);

// Video Olympics ---------------------------------------------------------------

struct VideoOlympicsEntry {
  std::string game;
  std::optional<ModeId> two_player;
  std::optional<ModeId> four_player;
};

const std::vector<VideoOlympicsEntry>& video_olympics_modes();

enum class VideoOlympicsGame { kPong, kFoozpong, kQuadrapong, kVolleyball, kBasketball };

struct VideoOlympicsMode {
  VideoOlympicsGame game = VideoOlympicsGame::kPong;
  int players = 2;
};

VideoOlympicsMode decode_video_olympics_mode(ModeId mode);

// Entombed -------------------------------------------------------------------

enum class EntombedPlay { kCompetitive, kCooperative };

inline constexpr ModeId kEntombedCompetitive{2};
inline constexpr ModeId kEntombedCooperative{3};

ModeId entombed_mode(EntombedPlay play);
EntombedPlay decode_entombed_mode(ModeId mode);

}  // namespace maale
