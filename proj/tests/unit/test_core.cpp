#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "maale/core/environment.hpp"
#include "maale/core/error.hpp"
#include "maale/games/catalog.hpp"

using namespace maale;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kIo;
}

std::vector<int> ids(const std::vector<ModeId>& modes) {
  std::vector<int> out;
  for (auto m : modes) out.push_back(m.value);
  return out;
}

}  // namespace

TEST_CASE("action ids follow the classic 18-action order") {
  CHECK(kNumActions == 18);
  CHECK(action_name(Action::kNoop) == "NOOP");
  CHECK(action_name(Action::kFire) == "FIRE");
  CHECK(action_name(Action::kDownLeftFire) == "DOWNLEFTFIRE");
  CHECK(to_int(Action::kUpRight) == 6);
  CHECK_FALSE(action_from_int(18).has_value());
  CHECK_FALSE(action_from_int(-1).has_value());
  const Joystick j = read_joystick(Action::kDownLeftFire);
  CHECK(j.dx == -1);
  CHECK(j.dy == 1);
  CHECK(j.fire);
}

TEST_CASE("rng streams are reproducible and bounded") {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const int x = a.below(7);
    CHECK(x == b.below(7));
    CHECK((x >= 0 && x < 7));
    differs |= x != c.below(7);
  }
  CHECK(differs);
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
}

TEST_CASE("screen fill is clipped and exact") {
  Screen s;
  s.clear({1, 2, 3});
  s.fill_rect(-5, -5, 10, 10, {9, 9, 9});
  CHECK(s.count({9, 9, 9}) == 25);
  s.fill_rect(155, 205, 100, 100, {7, 7, 7});
  CHECK(s.count({7, 7, 7}) == 25);
  CHECK(s.at(0, 0) == Rgb{9, 9, 9});
  CHECK(s.bytes().size() == Screen::kBytes);
}

TEST_CASE("load_game selects the default mode") {
  CHECK(Environment::load("space_invaders").mode().value == 33);
  CHECK(Environment::load("entombed").mode().value == 2);
  CHECK(Environment::load("pong").mode().value == 4);
  CHECK(Environment::load("pong").name() == "video_olympics");
  CHECK(code_of([] { Environment::load("no_such_game"); }) == ErrorCode::kUnknownGame);
  try {
    Environment::load("no_such_game");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("space_invaders") != std::string::npos);
  }
}

TEST_CASE("available_modes filters by player count") {
  auto vo = Environment::load("video_olympics");
  CHECK(ids(vo.available_modes(4)) == std::vector<int>{6, 21, 33, 41, 49});
  const auto two = ids(vo.available_modes(2));
  CHECK(std::find(two.begin(), two.end(), 33) == two.end());
  CHECK(two == std::vector<int>{4, 19, 39, 45});
  CHECK(Environment::load("combat").available_modes(3).empty());
  CHECK(!Environment::load("space_invaders").available_modes(2).empty());
  const auto all = ids(Environment::load("combat").available_modes());
  CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("set_mode validates against the registry") {
  auto si = Environment::load("space_invaders");
  si.set_mode(ModeId{50});
  CHECK(si.mode().value == 50);
  auto mc = Environment::load("maze_craze");
  mc.set_mode(ModeId{44});
  auto combat = Environment::load("combat");
  CHECK(code_of([&] { combat.set_mode(ModeId{3}); }) == ErrorCode::kInvalidMode);
  try {
    combat.set_mode(ModeId{3});
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("combat") != std::string::npos);
    CHECK(msg.find('3') != std::string::npos);
  }
}

TEST_CASE("act enforces reset, arity, action range and game over") {
  auto env = Environment::load("pong");
  const std::vector<Action> two{Action::kNoop, Action::kNoop};
  CHECK(code_of([&] { env.act(two); }) == ErrorCode::kModeNotSet);
  env.reset(1);
  CHECK(code_of([&] { env.act(std::vector<Action>{Action::kNoop}); }) == ErrorCode::kArity);
  const std::vector<Action> bad{Action::kNoop, static_cast<Action>(40)};
  CHECK(code_of([&] { env.act(bad); }) == ErrorCode::kInvalidArgument);
  while (!env.game_over()) env.act(two);
  CHECK(code_of([&] { env.act(two); }) == ErrorCode::kGameOver);
  env.reset(2);
  CHECK_FALSE(env.game_over());
  CHECK(env.frame_number() == 0);
}

TEST_CASE("unsupported registry entries refuse to reset") {
  auto env = Environment::load("video_olympics");
  env.set_mode(ModeId{19});
  CHECK(code_of([&] { env.reset(0); }) == ErrorCode::kUnsupportedMode);
}

TEST_CASE("every supported mode returns rewards and lives of the right arity") {
  for (const auto& [game, mode] : testing_support::supported_modes()) {
    CAPTURE(game);
    CAPTURE(mode.value);
    auto env = Environment::load(game);
    env.set_mode(mode);
    env.reset(5);
    const int n = env.num_players();
    CHECK(static_cast<int>(env.all_lives().size()) == n);
    Rng pick(5);
    for (int i = 0; i < 200 && !env.game_over(); ++i) {
      const auto r = env.act(testing_support::random_joint(env, pick));
      CHECK(static_cast<int>(r.size()) == n);
      for (int l : env.all_lives()) CHECK(l >= kEliminated);
    }
    const auto& screen = env.screen_rgb();
    CHECK(screen.bytes().size() == Screen::kBytes);
  }
}

TEST_CASE("lives follow the 0-means-alive convention") {
  auto si = Environment::load("space_invaders");
  si.reset(3);
  CHECK(si.all_lives() == LivesVector{1, 1});
  for (const auto& [game, mode] : testing_support::supported_modes()) {
    if (game == "space_invaders" || game == "entombed") continue;
    auto env = Environment::load(game);
    env.set_mode(mode);
    env.reset(1);
    for (int l : env.all_lives()) CHECK(l == 0);
  }
  auto en = Environment::load("entombed");
  en.reset(1);
  CHECK(en.all_lives() == LivesVector{2, 2});
}

TEST_CASE("stall config rejects a zero threshold") {
  auto env = Environment::load("othello");
  CHECK(code_of([&] { env.set_stall_config({true, 0, -1}); }) == ErrorCode::kInvalidArgument);
  env.set_stall_config({true, 10, -1});
  CHECK(env.stall_config().threshold_frames == 10);
}

TEST_CASE("othello stall forfeit: the idle mover loses") {
  auto env = Environment::load("othello");
  env.reset(9);
  const std::vector<Action> idle{Action::kNoop, Action::kNoop};
  RewardVector last;
  int frames = 0;
  while (!env.game_over()) {
    last = env.act(idle);
    ++frames;
  }
  CHECK(frames == 300);
  CHECK(last == RewardVector{-1, 1});
  CHECK(env.terminal_cause() == TerminalCause::kStall);
}

TEST_CASE("stall forfeit can be disabled") {
  auto env = Environment::load("othello");
  env.set_stall_config({false, 300, -1});
  env.reset(9);
  const std::vector<Action> idle{Action::kNoop, Action::kNoop};
  for (int i = 0; i < 1000; ++i) env.act(idle);
  CHECK_FALSE(env.game_over());
}

TEST_CASE("screen is cached until the next act") {
  auto env = Environment::load("combat");
  env.reset(4);
  const Screen* first = &env.screen_rgb();
  const auto copy = *first;
  CHECK(&env.screen_rgb() == first);
  env.act(std::vector<Action>{Action::kUp, Action::kUp});
  CHECK(env.screen_rgb() == env.screen_rgb());
  CHECK_FALSE(env.screen_rgb() == copy);
}
