#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "maale/core/environment.hpp"
#include "maale/core/error.hpp"
#include "maale/games/combat.hpp"
#include "maale/games/entombed.hpp"
#include "maale/games/maze.hpp"
#include "maale/games/maze_craze.hpp"
#include "maale/games/othello.hpp"
#include "maale/games/space_invaders.hpp"
#include "maale/games/video_olympics.hpp"
#include "maale/games/warlords.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace maale;

namespace {

template <class G>
const G& running(const Environment& env) {
  const auto* g = dynamic_cast<const G*>(env.game());
  REQUIRE(g != nullptr);
  return *g;
}

Environment started(const char* game, int mode, std::uint64_t seed) {
  auto env = Environment::load(game);
  env.set_mode(ModeId{mode});
  env.reset(seed);
  return env;
}

oracle::Board to_board(const othello::Position& p) {
  oracle::Board b{};
  for (int sq = 0; sq < 64; ++sq) {
    const auto m = othello::Bitboard{1} << sq;
    b[sq / 8][sq % 8] = (p.mine() & m) ? 1 : (p.theirs() & m) ? 2 : 0;
  }
  return b;
}

}  // namespace

TEST_CASE("othello bitboard flips agree with a naive board walk") {
  Rng rng(2024);
  int positions = 0;
  int checked_moves = 0;
  while (positions < 1000) {
    auto pos = othello::Position::initial();
    const int depth = rng.between(0, 50);
    for (int ply = 0; ply < depth; ++ply) {
      const auto legal = othello::legal_moves(pos.mine(), pos.theirs());
      if (!legal) {
        pos.to_move = 1 - pos.to_move;
        if (!othello::legal_moves(pos.mine(), pos.theirs())) break;
        continue;
      }
      std::vector<int> squares;
      for (int sq = 0; sq < 64; ++sq) {
        if (legal >> sq & 1) squares.push_back(sq);
      }
      REQUIRE(pos.play(squares[static_cast<std::size_t>(rng.below(static_cast<int>(squares.size())))]));
    }
    const auto board = to_board(pos);
    const auto legal = othello::legal_moves(pos.mine(), pos.theirs());
    for (int sq = 0; sq < 64; ++sq) {
      oracle::Board after{};
      const int naive = oracle::flips_naive(board, sq / 8, sq % 8, &after);
      const auto f = othello::flips(pos.mine(), pos.theirs(), sq);
      CHECK(std::popcount(f) == naive);
      CHECK(((legal >> sq & 1) != 0) == (naive > 0));
      if (naive > 0) {
        auto next = pos;
        const int mover = pos.to_move;
        REQUIRE(next.play(sq));
        const auto mine_after = mover == 0 ? next.black : next.white;
        for (int s = 0; s < 64; ++s) {
          CHECK(((mine_after >> s & 1) != 0) == (after[s / 8][s % 8] == 1));
        }
        ++checked_moves;
      }
    }
    ++positions;
  }
  CHECK(checked_moves > 1000);
}

TEST_CASE("othello placements never overlap and the initial board has four discs") {
  const auto p = othello::Position::initial();
  CHECK(std::popcount(p.black) == 2);
  CHECK(std::popcount(p.white) == 2);
  CHECK((p.black & p.white) == 0);
  CHECK(std::popcount(othello::legal_moves(p.mine(), p.theirs())) == 4);
}

TEST_CASE("carved mazes are perfect and seed dependent") {
  std::set<std::vector<bool>> distinct;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto grid = carve_perfect_maze(15, 10, rng);
    REQUIRE(grid.width() == 31);
    REQUIRE(grid.height() == 21);
    // Every cell is reachable from every other.
    const auto fill = flood_fill(grid, {1, 1});
    int open = 0;
    for (int y = 0; y < grid.height(); ++y) {
      for (int x = 0; x < grid.width(); ++x) {
        if (!grid.wall(x, y)) {
          ++open;
          CHECK(fill[static_cast<std::size_t>(y * grid.width() + x)] != 0);
        }
      }
    }
    // Perfect maze: cells + (cells - 1) passages are open, so no cycles.
    CHECK(open == 150 + 149);
    CHECK(reachable(grid, {1, 1}, {29, 19}));
    std::vector<bool> key;
    for (int y = 0; y < grid.height(); ++y)
      for (int x = 0; x < grid.width(); ++x) key.push_back(grid.wall(x, y));
    distinct.insert(key);
  }
  CHECK(distinct.size() == 20);
}

TEST_CASE("maze craze exit is reachable from both starts") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto env = started("maze_craze", 0, seed);
    const auto& g = running<MazeCraze>(env);
    const GridPoint exit = g.exit_block();
    CHECK_FALSE(g.walls().wall(exit.x, exit.y));
    CHECK(reachable(g.walls(), {1, 1}, exit));
    CHECK(reachable(g.walls(), {1, 19}, exit));
  }
}

TEST_CASE("maze craze visibility levels") {
  for (int k = 0; k < 4; ++k) {
    CAPTURE(k);
    auto env = started("maze_craze", k, 7);
    const auto& g = running<MazeCraze>(env);
    int walls = 0, visible = 0;
    for (int y = 0; y < g.walls().height(); ++y) {
      for (int x = 0; x < g.walls().width(); ++x) {
        if (g.walls().wall(x, y)) {
          ++walls;
          if (g.block_visible(x, y)) ++visible;
        }
      }
    }
    const auto pixels = env.screen_rgb().count(MazeCraze::kWallColor);
    if (k == 0) {
      CHECK(visible == walls);
      CHECK(pixels == static_cast<std::size_t>(walls) * MazeCraze::kBlockW * MazeCraze::kBlockH);
    } else if (k == 3) {
      CHECK(visible == 0);
      CHECK(pixels == 0);
    } else {
      CHECK(visible > 0);
      CHECK(visible < walls);
      CHECK(pixels == static_cast<std::size_t>(visible) * MazeCraze::kBlockW * MazeCraze::kBlockH);
    }
  }
}

TEST_CASE("maze craze fake walls render like real walls") {
  // Capture, full visibility. Seat 0 drops a fake wall with FIRE after moving.
  auto env = started("maze_craze", 44, 11);
  const auto& g = running<MazeCraze>(env);
  const auto before = env.screen_rgb().count(MazeCraze::kWallColor);
  Rng pick(5);
  int frames = 0;
  while (g.fake_walls().empty() && !env.game_over() && frames < 2000) {
    const auto a = (frames % 8 < 4) ? testing_support::random_joint(env, pick)[0] : Action::kFire;
    const std::array<Action, 2> joint{a, Action::kNoop};
    env.act(joint);
    ++frames;
  }
  REQUIRE_FALSE(g.fake_walls().empty());
  CHECK(g.fake_walls_left(0) == MazeCraze::kMaxFakeWalls - static_cast<int>(g.fake_walls().size()));
  const auto after = env.screen_rgb().count(MazeCraze::kWallColor);
  CHECK(after >= before + static_cast<std::size_t>(MazeCraze::kBlockW * MazeCraze::kBlockH));
}

TEST_CASE("combat billiard shots only kill after a bounce") {
  // Tanks spawn on the same row facing each other with open ground between.
  const std::array<Action, 2> fire{Action::kFire, Action::kNoop};
  const std::array<Action, 2> idle{Action::kNoop, Action::kNoop};

  auto plain = started("combat", 1, 3);
  bool scored = false;
  plain.act(fire);
  for (int i = 0; i < 80 && !scored; ++i) scored = plain.act(idle)[0] == 1;
  CHECK(scored);

  auto billiards = started("combat", 8, 3);
  const auto& g = running<Combat>(billiards);
  billiards.act(fire);
  REQUIRE(g.vehicles()[0].shot.active);
  bool crossed = false;
  while (g.vehicles()[0].shot.active && g.vehicles()[0].shot.bounces == 0) {
    const auto r = billiards.act(idle);
    CHECK(r[0] == 0);
    if (fx::to_px(g.vehicles()[0].shot.x) >= fx::to_px(g.vehicles()[1].x)) crossed = true;
  }
  CHECK(crossed);
  CHECK(g.scores()[0] == 0);
}

TEST_CASE("combat invisible tanks are not drawn unless flashing") {
  auto env = started("combat", 10, 4);
  const auto& g = running<Combat>(env);
  const std::array<Action, 2> idle{Action::kNoop, Action::kNoop};
  env.act(idle);
  CHECK_FALSE(g.vehicle_visible(0));
  CHECK_FALSE(g.vehicle_visible(1));
  auto visible = started("combat", 1, 4);
  visible.act(idle);
  // Same state, so any pixel difference is the tank sprites.
  CHECK(env.screen_rgb() != visible.screen_rgb());
  const std::array<Action, 2> fire{Action::kFire, Action::kNoop};
  env.act(fire);
  CHECK(g.vehicle_visible(0));
  CHECK_FALSE(g.vehicle_visible(1));
}

TEST_CASE("space invaders invisible aliens leave no alien pixels") {
  auto plain = started("space_invaders", 33, 1);
  auto hidden = started("space_invaders", 41, 1);
  CHECK(plain.screen_rgb().count(SpaceInvaders::kAlienColor) > 0);
  CHECK(hidden.screen_rgb().count(SpaceInvaders::kAlienColor) == 0);
  CHECK(running<SpaceInvaders>(hidden).aliens_alive() == SpaceInvaders::kRows * SpaceInvaders::kCols);
}

TEST_CASE("space invaders alternating turns allow one shooter") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto env = started("space_invaders", 33 + 16, seed);
    const auto& g = running<SpaceInvaders>(env);
    Rng pick(seed + 100);
    while (!env.game_over() && env.frame_number() < 3000) {
      const int owner = g.fire_owner();
      CHECK_FALSE(g.can_fire(1 - owner));
      CHECK(g.turn_timer() <= SpaceInvaders::kTurnFrames);
      const bool lasers_before = g.cannons()[static_cast<std::size_t>(1 - owner)].laser;
      env.act(testing_support::random_joint(env, pick));
      // The non-owner never launches a shot.
      if (!lasers_before) CHECK_FALSE(g.cannons()[static_cast<std::size_t>(1 - owner)].laser);
    }
  }
}

TEST_CASE("space invaders without alternation lets both fire") {
  auto env = started("space_invaders", 33, 2);
  const auto& g = running<SpaceInvaders>(env);
  CHECK(g.can_fire(0));
  CHECK(g.can_fire(1));
}

TEST_CASE("space invaders lives are pooled") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto env = started("space_invaders", 33 + 4, seed);
    const auto& g = running<SpaceInvaders>(env);
    Rng pick(seed);
    while (!env.game_over()) {
      env.act(testing_support::random_joint(env, pick));
      const auto lives = env.all_lives();
      // Spare lives beyond the one in play, split across seats.
      if (g.pool() > 0) {
        CHECK(lives[0] + lives[1] + 1 == g.pool());
        CHECK(std::abs(lives[0] - lives[1]) <= 1);
        CHECK(g.pool() + g.cannons()[0].deaths + g.cannons()[1].deaths == SpaceInvaders::kPooledLives);
      }
    }
    if (env.terminal_cause() == TerminalCause::kLives) {
      CHECK(env.all_lives() == LivesVector{-1, -1});
    }
  }
}

TEST_CASE("warlords ends with exactly one survivor and silent dead players") {
  int finished_by_lives = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto env = started("warlords", 1, seed);
    const auto& g = running<Warlords>(env);
    Rng pick(seed * 31 + 1);
    std::array<int, 4> totals{};
    while (!env.game_over()) {
      std::array<bool, 4> alive_before{};
      for (int p = 0; p < 4; ++p) alive_before[static_cast<std::size_t>(p)] = g.alive(p);
      const auto r = env.act(testing_support::random_joint(env, pick));
      for (int p = 0; p < 4; ++p) {
        if (!alive_before[static_cast<std::size_t>(p)]) CHECK(r[static_cast<std::size_t>(p)] == 0);
        totals[static_cast<std::size_t>(p)] += r[static_cast<std::size_t>(p)];
      }
    }
    CHECK(g.alive_count() == 1);
    const auto lives = env.all_lives();
    CHECK(std::count(lives.begin(), lives.end(), -1) == 3);
    for (int p = 0; p < 4; ++p) {
      CHECK(totals[static_cast<std::size_t>(p)] == (g.alive(p) ? 1 : -1));
    }
    if (env.terminal_cause() == TerminalCause::kLives) ++finished_by_lives;
  }
  CHECK(finished_by_lives > 0);
}

TEST_CASE("warlords castles have the expected brick band") {
  int slots = 0;
  for (int i = 0; i < Warlords::kBrickGrid; ++i)
    for (int j = 0; j < Warlords::kBrickGrid; ++j) slots += Warlords::brick_slot(i, j);
  CHECK(slots == 24);
  auto env = started("warlords", 1, 0);
  for (int p = 0; p < 4; ++p) CHECK(running<Warlords>(env).bricks_left(p) == 24);
  CHECK_THROWS_AS(Environment::load("warlords").set_mode(ModeId{2}), Error);
}

TEST_CASE("entombed cooperative rewards are shared") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = testing_support::random_rollout("entombed", ModeId{3}, seed, 20000, false);
    for (const auto& r : t.rewards) CHECK(r[0] == r[1]);
  }
}

TEST_CASE("entombed keeps an escape route in freshly generated stages") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto env = started("entombed", 2, seed);
    const auto& g = running<Entombed>(env);
    CHECK(g.has_escape(0));
    CHECK(g.has_escape(1));
    CHECK(env.all_lives() == LivesVector{2, 2});
  }
}

TEST_CASE("competitive games are zero-sum frame by frame") {
  const std::pair<const char*, int> cases[] = {{"video_olympics", 4}, {"video_olympics", 6},  {"video_olympics", 33},
                                                {"video_olympics", 39}, {"combat", 1},         {"combat", 22},
                                                {"maze_craze", 0},     {"maze_craze", 4},     {"othello", 1},
                                                {"entombed", 2}};
  for (const auto& [game, mode] : cases) {
    CAPTURE(game);
    CAPTURE(mode);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto t = testing_support::random_rollout(game, ModeId{mode}, seed, 20000, false);
      for (const auto& r : t.rewards) CHECK(std::accumulate(r.begin(), r.end(), 0) == 0);
    }
  }
}

TEST_CASE("pong rewards follow the ball leaving the court") {
  auto env = started("pong", 4, 9);
  const auto& g = running<VideoOlympics>(env);
  Rng pick(3);
  int points = 0;
  while (!env.game_over()) {
    const auto before = g.team_scores();
    const auto r = env.act(testing_support::random_joint(env, pick));
    const auto after = g.team_scores();
    CHECK(r[0] == (after[0] - before[0]) - (after[1] - before[1]));
    points += std::abs(r[0]);
  }
  CHECK(points > 0);
}

TEST_CASE("actions outside the minimal set duplicate a minimal action") {
  // Replay a random prefix, vary seat 0's action on one frame, then continue
  // with a fixed tail. Each non-minimal action must reproduce the outcome of
  // some minimal action.
  const std::pair<const char*, int> cases[] = {{"combat", 1},          {"combat", 15},   {"entombed", 2},
                                                {"maze_craze", 44},     {"othello", 1},   {"space_invaders", 33},
                                                {"video_olympics", 4},  {"warlords", 1}};
  for (const auto& [game, mode] : cases) {
    CAPTURE(game);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      auto probe = started(game, mode, seed);
      const auto minimal = probe.minimal_action_set();
      Rng plan(seed + 77);
      std::vector<std::vector<Action>> prefix, tail;
      for (int i = 0; i < 60; ++i) prefix.push_back(testing_support::random_joint(probe, plan));
      for (int i = 0; i < 24; ++i) tail.push_back(testing_support::random_joint(probe, plan));
      auto outcome = [&](Action a) {
        auto env = started(game, mode, seed);
        std::vector<int> rewards;
        auto play = [&](const std::vector<Action>& joint) {
          if (env.game_over()) return;
          for (int x : env.act(joint)) rewards.push_back(x);
        };
        for (const auto& j : prefix) play(j);
        auto varied = tail.front();
        varied[0] = a;
        play(varied);
        // Hold the varied action long enough for delayed movement to register.
        for (int i = 1; i < 8; ++i) {
          auto held = tail[static_cast<std::size_t>(i)];
          held[0] = a;
          play(held);
        }
        for (std::size_t i = 8; i < tail.size(); ++i) play(tail[i]);
        const auto b = env.screen_rgb().bytes();
        return std::make_pair(std::vector<std::uint8_t>(b.begin(), b.end()), rewards);
      };
      std::vector<decltype(outcome(Action::kNoop))> reference;
      for (Action m : minimal) reference.push_back(outcome(m));
      for (int id = 0; id < kNumActions; ++id) {
        const Action a = *action_from_int(id);
        if (std::find(minimal.begin(), minimal.end(), a) != minimal.end()) continue;
        CAPTURE(action_name(a));
        const auto o = outcome(a);
        CHECK(std::find(reference.begin(), reference.end(), o) != reference.end());
      }
    }
  }
}
