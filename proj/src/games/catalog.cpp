#include "maale/games/catalog.hpp"

#include <algorithm>
#include "json.hpp"
#include <set>

#include "maale/core/error.hpp"
#include "maale/games/combat.hpp"
#include "maale/games/entombed.hpp"
#include "maale/games/maze_craze.hpp"
#include "maale/games/modes.hpp"
#include "maale/games/othello.hpp"
#include "maale/games/space_invaders.hpp"
#include "maale/games/video_olympics.hpp"
#include "maale/games/warlords.hpp"

namespace maale {

std::string_view category_name(Category category) {
  switch (category) {
    case Category::kOneVsOneTournament: return "1v1-tournament";
    case Category::kMixedSumSurvival: return "mixed-sum-survival";
    case Category::kCompetitiveRacing: return "competitive-racing";
    case Category::kLongTermStrategy: return "long-term-strategy";
    case Category::kFourPlayerFreeForAll: return "4p-free-for-all";
    case Category::kCooperative: return "cooperative";
  }
  return "unknown";
}

const ModeInfo* GameSpec::find_mode(ModeId mode) const {
  for (const auto& m : modes) {
    if (m.id == mode) return &m;
  }
  return nullptr;
}

std::string GameSpec::players_label() const {
  std::set<int> counts;
  for (const auto& m : modes) counts.insert(m.players);
  std::string out;
  for (int c : counts) {
    if (!out.empty()) out += "/";
    out += std::to_string(c);
  }
  return out;
}

namespace {

template <typename G>
GameSpec make_spec(std::string name, std::string theory, Category category, ModeId default_mode,
                   std::vector<ModeInfo> modes) {
  GameSpec spec;
  spec.name = std::move(name);
  spec.theory = std::move(theory);
  spec.category = category;
  spec.default_mode = default_mode;
  spec.modes = std::move(modes);
  spec.minimal_actions = [](ModeId m) { return G::minimal_actions(m); };
  spec.make = [](ModeId m) -> std::unique_ptr<Game> { return std::make_unique<G>(m); };
  return spec;
}

std::string combat_label(const CombatFlags& f) {
  if (f.style == CombatStyle::kPlane) {
    std::string s = f.jet ? "jet" : "biplane";
    if (f.guided) s += " guided";
    return s;
  }
  std::string s = "tank";
  if (f.billiards) s += " billiards";
  if (f.maze) s += " maze";
  if (f.invisible) s += " invisible";
  return s;
}

std::vector<GameSpec> build_catalog() {
  std::vector<GameSpec> out;

  std::vector<ModeInfo> combat;
  for (ModeId m : combat_mode_ids()) {
    combat.push_back({m, 2, combat_label(decode_combat_mode(m)), Category::kOneVsOneTournament, true});
  }
  out.push_back(make_spec<Combat>("combat", "competitive", Category::kOneVsOneTournament, ModeId{1},
                                  std::move(combat)));

  out.push_back(make_spec<Entombed>(
      "entombed", "competitive/cooperative", Category::kCompetitiveRacing, kEntombedCompetitive,
      {{kEntombedCompetitive, 2, "competitive", Category::kCompetitiveRacing, true},
       {kEntombedCooperative, 2, "cooperative", Category::kCooperative, true}}));

  std::vector<ModeInfo> maze;
  const char* type_names[] = {"race", "robbers", "capture"};
  int t = 0;
  for (int n : maze_craze_game_types()) {
    for (int k = 0; k <= 3; ++k) {
      maze.push_back({maze_craze_mode(n, k), 2,
                      std::string(type_names[t]) + " visibility " + std::to_string(k),
                      Category::kCompetitiveRacing, true});
    }
    ++t;
  }
  out.push_back(make_spec<MazeCraze>("maze_craze", "competitive", Category::kCompetitiveRacing,
                                     ModeId{0}, std::move(maze)));

  out.push_back(make_spec<Othello>("othello", "competitive", Category::kLongTermStrategy, ModeId{1},
                                   {{ModeId{1}, 2, "standard", Category::kLongTermStrategy, true}}));
  out.back().stall_enabled = true;

  std::vector<ModeInfo> invaders;
  for (int v = kSpaceInvadersBaseMode; v <= kMaxModeId; ++v) {
    const SpaceInvadersFlags f = decode_space_invaders_mode(ModeId{v});
    std::string label;
    const auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!label.empty()) label += "+";
      label += name;
    };
    add(f.moving_shields, "moving_shields");
    add(f.zigzag_bombs, "zigzag_bombs");
    add(f.fast_bombs, "fast_bombs");
    add(f.invisible_invaders, "invisible_invaders");
    add(f.alternating_turns, "alternating_turns");
    if (label.empty()) label = "standard";
    invaders.push_back({ModeId{v}, 2, label, Category::kMixedSumSurvival, true});
  }
  out.push_back(make_spec<SpaceInvaders>("space_invaders", "mixed", Category::kMixedSumSurvival,
                                         ModeId{kSpaceInvadersBaseMode}, std::move(invaders)));

  std::vector<ModeInfo> olympics;
  for (const auto& e : video_olympics_modes()) {
    const bool supported = e.game != "foozpong" && e.game != "basketball";
    if (e.two_player) olympics.push_back({*e.two_player, 2, e.game, Category::kOneVsOneTournament, supported});
    if (e.four_player) olympics.push_back({*e.four_player, 4, e.game, Category::kOneVsOneTournament, supported});
  }
  out.push_back(make_spec<VideoOlympics>("video_olympics", "competitive", Category::kOneVsOneTournament,
                                         ModeId{4}, std::move(olympics)));

  out.push_back(make_spec<Warlords>("warlords", "competitive", Category::kFourPlayerFreeForAll, ModeId{1},
                                    {{ModeId{1}, 4, "standard", Category::kFourPlayerFreeForAll, true}}));
  return out;
}

}  // namespace

const std::vector<GameSpec>& game_catalog() {
  static const std::vector<GameSpec> catalog = build_catalog();
  return catalog;
}

std::string game_names_joined() {
  std::string out;
  for (const auto& g : game_catalog()) {
    if (!out.empty()) out += ", ";
    out += g.name;
  }
  return out;
}

const GameSpec& find_game(std::string_view name) {
  const std::string_view resolved = name == "pong" ? std::string_view("video_olympics") : name;
  for (const auto& g : game_catalog()) {
    if (g.name == resolved) return g;
  }
  throw Error(ErrorCode::kUnknownGame,
              "unknown game '" + std::string(name) + "' (valid games: " + game_names_joined() + ", pong)");
}

ModeId default_mode_for(std::string_view name) { return find_game(name).default_mode; }

std::string catalog_json() {
  nlohmann::json games = nlohmann::json::array();
  for (const auto& g : game_catalog()) {
    nlohmann::json modes = nlohmann::json::array();
    for (const auto& m : g.modes) {
      modes.push_back({{"id", m.id.value},
                       {"players", m.players},
                       {"label", m.label},
                       {"category", category_name(m.category)},
                       {"supported", m.supported}});
    }
    games.push_back({{"name", g.name},
                     {"theory", g.theory},
                     {"category", category_name(g.category)},
                     {"players", g.players_label()},
                     {"default_mode", g.default_mode.value},
                     {"stall_forfeit", g.stall_enabled},
                     {"modes", std::move(modes)}});
  }
  return games.dump(2);
}

}  // namespace maale
