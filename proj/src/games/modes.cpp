#include "maale/games/modes.hpp"

#include <algorithm>
#include <array>

#include "maale/core/error.hpp"

namespace maale {

namespace {

struct CombatRow {
  int mode;
  CombatFlags flags;
};

const std::array<CombatRow, 12>& combat_rows() {
  static const std::array<CombatRow, 12> rows{{
      {1, CombatFlags::tank(false, false, false)},
      {2, CombatFlags::tank(true, false, false)},
      {8, CombatFlags::tank(false, true, false)},
      {9, CombatFlags::tank(true, true, false)},
      {10, CombatFlags::tank(false, false, true)},
      {11, CombatFlags::tank(true, false, true)},
      {13, CombatFlags::tank(false, true, true)},
      {14, CombatFlags::tank(true, true, true)},
      {15, CombatFlags::plane(false, false)},
      {16, CombatFlags::plane(true, false)},
      {21, CombatFlags::plane(false, true)},
      {22, CombatFlags::plane(true, true)},
  }};
  return rows;
}

[[noreturn]] void invalid(const std::string& game, int value) {
  throw Error(ErrorCode::kInvalidMode,
              "invalid mode " + std::to_string(value) + " for game " + game);
}

}  // namespace

ModeId combat_mode(const CombatFlags& flags) {
  for (const auto& row : combat_rows()) {
    if (row.flags == flags) return ModeId{row.mode};
  }
  throw Error(ErrorCode::kInvalidMode, "combat: option combination has no mode");
}

CombatFlags decode_combat_mode(ModeId mode) {
  for (const auto& row : combat_rows()) {
    if (row.mode == mode.value) return row.flags;
  }
  invalid("combat", mode.value);
}

const std::vector<ModeId>& combat_mode_ids() {
  static const std::vector<ModeId> ids = [] {
    std::vector<ModeId> out;
    for (const auto& row : combat_rows()) out.push_back(ModeId{row.mode});
    return out;
  }();
  return ids;
}

ModeId space_invaders_mode(const SpaceInvadersFlags& f) {
  return ModeId{kSpaceInvadersBaseMode + int{f.moving_shields} + 2 * int{f.zigzag_bombs} +
                4 * int{f.fast_bombs} + 8 * int{f.invisible_invaders} +
                16 * int{f.alternating_turns}};
}

SpaceInvadersFlags decode_space_invaders_mode(ModeId mode) {
  const int bits = mode.value - kSpaceInvadersBaseMode;
  if (bits < 0 || bits > 31) invalid("space_invaders", mode.value);
  return {(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0, (bits & 8) != 0,
          (bits & 16) != 0};
}

const std::vector<int>& maze_craze_game_types() {
  static const std::vector<int> types{static_cast<int>(MazeCrazeType::kRace),
                                      static_cast<int>(MazeCrazeType::kRobbers),
                                      static_cast<int>(MazeCrazeType::kCapture)};
  return types;
}

ModeId maze_craze_mode(int game_type, int visibility) {
  const auto& types = maze_craze_game_types();
  if (visibility < 0 || visibility > 3 ||
      std::find(types.begin(), types.end(), game_type) == types.end()) {
    throw Error(ErrorCode::kInvalidMode, "maze_craze: unsupported game type " +
                                             std::to_string(game_type) + " / visibility " +
                                             std::to_string(visibility));
  }
  return ModeId{4 * game_type + visibility};
}

MazeCrazeMode decode_maze_craze_mode(ModeId mode) {
  if (mode.value < 0) invalid("maze_craze", mode.value);
  const MazeCrazeMode decoded{mode.value / 4, mode.value % 4};
  const auto& types = maze_craze_game_types();
  if (std::find(types.begin(), types.end(), decoded.game_type) == types.end()) {
    invalid("maze_craze", mode.value);
  }
  return decoded;
}

const std::vector<VideoOlympicsEntry>& video_olympics_modes() {
  static const std::vector<VideoOlympicsEntry> table{
      {"classic_pong", ModeId{4}, ModeId{6}},
      {"foozpong", ModeId{19}, ModeId{21}},
      {"quadrapong", std::nullopt, ModeId{33}},
      {"volleyball", ModeId{39}, ModeId{41}},
      {"basketball", ModeId{45}, ModeId{49}},
  };
  return table;
}

VideoOlympicsMode decode_video_olympics_mode(ModeId mode) {
  constexpr std::array<VideoOlympicsGame, 5> games{
      VideoOlympicsGame::kPong, VideoOlympicsGame::kFoozpong, VideoOlympicsGame::kQuadrapong,
      VideoOlympicsGame::kVolleyball, VideoOlympicsGame::kBasketball};
  const auto& table = video_olympics_modes();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].two_player == mode) return {games[i], 2};
    if (table[i].four_player == mode) return {games[i], 4};
  }
  invalid("video_olympics", mode.value);
}

ModeId entombed_mode(EntombedPlay play) {
  return play == EntombedPlay::kCompetitive ? kEntombedCompetitive : kEntombedCooperative;
}

EntombedPlay decode_entombed_mode(ModeId mode) {
  if (mode == kEntombedCompetitive) return EntombedPlay::kCompetitive;
  if (mode == kEntombedCooperative) return EntombedPlay::kCooperative;
  invalid("entombed", mode.value);
}

}  // namespace maale
