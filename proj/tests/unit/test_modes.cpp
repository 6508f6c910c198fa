#include <set>

#include "doctest.h"
#include "maale/core/error.hpp"
#include "maale/games/catalog.hpp"
#include "maale/games/modes.hpp"

using namespace maale;

TEST_CASE("combat tank table") {
  struct Row {
    int mode;
    bool maze, billiards, invisible;
  };
  const Row rows[] = {{1, false, false, false}, {2, true, false, false}, {8, false, true, false},
                      {9, true, true, false},   {10, false, false, true}, {11, true, false, true},
                      {13, false, true, true},  {14, true, true, true}};
  for (const auto& r : rows) {
    CAPTURE(r.mode);
    const auto flags = CombatFlags::tank(r.maze, r.billiards, r.invisible);
    CHECK(combat_mode(flags).value == r.mode);
    CHECK(decode_combat_mode(ModeId{r.mode}) == flags);
  }
}

TEST_CASE("combat plane table") {
  struct Row {
    int mode;
    bool guided, jet;
  };
  const Row rows[] = {{15, false, false}, {16, true, false}, {21, false, true}, {22, true, true}};
  for (const auto& r : rows) {
    CAPTURE(r.mode);
    const auto flags = CombatFlags::plane(r.guided, r.jet);
    CHECK(combat_mode(flags).value == r.mode);
    CHECK(decode_combat_mode(ModeId{r.mode}) == flags);
  }
  for (int bad : {0, 3, 4, 5, 6, 7, 12, 17, 18, 19, 20, 23, 64}) {
    CHECK_THROWS_AS(decode_combat_mode(ModeId{bad}), Error);
  }
}

TEST_CASE("space invaders flags follow 33 + bitfield") {
  CHECK(space_invaders_mode({}).value == 33);
  CHECK(space_invaders_mode({.invisible_invaders = true}).value == 41);
  CHECK(space_invaders_mode({.moving_shields = true, .alternating_turns = true}).value == 50);
  CHECK(space_invaders_mode({true, true, true, true, true}).value == 64);
  int seen = 0;
  for (int bits = 0; bits < 32; ++bits) {
    const SpaceInvadersFlags f{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0, (bits & 8) != 0, (bits & 16) != 0};
    const ModeId m = space_invaders_mode(f);
    CHECK(m.value == 33 + bits);
    CHECK(decode_space_invaders_mode(m) == f);
    ++seen;
  }
  CHECK(seen == 32);
  CHECK_THROWS_AS(decode_space_invaders_mode(ModeId{32}), Error);
  CHECK_THROWS_AS(decode_space_invaders_mode(ModeId{65}), Error);
}

TEST_CASE("maze craze modes are 4n + k") {
  CHECK(maze_craze_mode(0, 0).value == 0);
  CHECK(maze_craze_mode(1, 0).value == 4);
  CHECK(maze_craze_mode(11, 0).value == 44);
  for (int n : maze_craze_game_types()) {
    for (int k = 0; k < 4; ++k) {
      const ModeId m = maze_craze_mode(n, k);
      CHECK(m.value == 4 * n + k);
      CHECK(decode_maze_craze_mode(m) == MazeCrazeMode{n, k});
    }
  }
  CHECK_THROWS_AS(maze_craze_mode(0, 4), Error);
  CHECK_THROWS_AS(maze_craze_mode(2, 0), Error);
  CHECK_THROWS_AS(decode_maze_craze_mode(ModeId{8}), Error);
}

TEST_CASE("video olympics table") {
  struct Row {
    const char* game;
    int two, four;  // 0 means not available
  };
  const Row rows[] = {{"classic_pong", 4, 6},
                      {"foozpong", 19, 21},
                      {"quadrapong", 0, 33},
                      {"volleyball", 39, 41},
                      {"basketball", 45, 49}};
  const auto& table = video_olympics_modes();
  REQUIRE(table.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CAPTURE(rows[i].game);
    CHECK(table[i].game == rows[i].game);
    CHECK(table[i].two_player.has_value() == (rows[i].two != 0));
    if (rows[i].two) {
      CHECK(table[i].two_player->value == rows[i].two);
      CHECK(decode_video_olympics_mode(ModeId{rows[i].two}).players == 2);
    }
    CHECK(table[i].four_player->value == rows[i].four);
    CHECK(decode_video_olympics_mode(ModeId{rows[i].four}).players == 4);
  }
  CHECK(decode_video_olympics_mode(ModeId{33}).game == VideoOlympicsGame::kQuadrapong);
  CHECK_THROWS_AS(decode_video_olympics_mode(ModeId{5}), Error);
}

TEST_CASE("entombed modes") {
  CHECK(entombed_mode(EntombedPlay::kCompetitive).value == 2);
  CHECK(entombed_mode(EntombedPlay::kCooperative).value == 3);
  CHECK(decode_entombed_mode(ModeId{2}) == EntombedPlay::kCompetitive);
  CHECK(decode_entombed_mode(ModeId{3}) == EntombedPlay::kCooperative);
  CHECK_THROWS_AS(decode_entombed_mode(ModeId{1}), Error);
}

TEST_CASE("catalog rows mirror the game table") {
  const auto& si = find_game("space_invaders");
  CHECK(si.theory == "mixed");
  CHECK(si.players_label() == "2");
  CHECK(find_game("warlords").players_label() == "4");
  CHECK(find_game("warlords").theory == "competitive");
  CHECK(find_game("video_olympics").players_label() == "2/4");
  CHECK(find_game("othello").stall_enabled);
  CHECK_FALSE(find_game("combat").stall_enabled);
  // One game or more per category.
  std::set<Category> categories;
  for (const auto& g : game_catalog()) {
    for (const auto& m : g.modes) categories.insert(m.category);
  }
  CHECK(categories.size() == 6);
  const auto json = catalog_json();
  CHECK(json.find("\"space_invaders\"") != std::string::npos);
}
