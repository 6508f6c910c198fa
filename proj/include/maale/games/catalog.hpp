#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "maale/core/action.hpp"
#include "maale/core/types.hpp"
#include "maale/games/game.hpp"

namespace maale {

enum class Category {
  kOneVsOneTournament,
  kMixedSumSurvival,
  kCompetitiveRacing,
  kLongTermStrategy,
  kFourPlayerFreeForAll,
  kCooperative,
};

std::string_view category_name(Category category);

struct ModeInfo {
  ModeId id;
  int players = 2;
  std::string label;
  Category category = Category::kOneVsOneTournament;
  // Registered but without implemented dynamics: reset() refuses it.
  bool supported = true;
};

struct GameSpec {
  std::string name;
  // Reward-structure column of the game table: competitive, mixed, ...
  std::string theory;
  Category category = Category::kOneVsOneTournament;
  bool stall_enabled = false;
  ModeId default_mode;
  std::vector<ModeInfo> modes;
  std::function<std::vector<Action>(ModeId)> minimal_actions;
  std::function<std::unique_ptr<Game>(ModeId)> make;

  const ModeInfo* find_mode(ModeId mode) const;
  // "2", "4" or "2/4".
  std::string players_label() const;
};

// Stable ordering; this is the order list-games prints.
const std::vector<GameSpec>& game_catalog();

// Accepts catalog names plus the alias "pong" (video_olympics). Throws
// Error{kUnknownGame} listing the valid names.
const GameSpec& find_game(std::string_view name);

// Default mode for a possibly aliased name ("pong" -> 4).
ModeId default_mode_for(std::string_view name);

std::string game_names_joined();

// Machine-readable catalog: one object per game with name, theory,
// category, players and the mode registry.
std::string catalog_json();

}  // namespace maale
