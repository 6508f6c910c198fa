#include <cmath>
#include <sstream>

#include "doctest.h"
#include "maale/core/environment.hpp"
#include "maale/core/error.hpp"
#include "maale/preprocessing/image.hpp"
#include "maale/preprocessing/pipeline.hpp"
#include "oracles.hpp"

using namespace maale;

namespace {

GrayImage random_image(Rng& rng, int h, int w) {
  GrayImage img(h, w);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.below(256));
  return img;
}

GrayImage filled(int h, int w, std::uint8_t v) { return GrayImage(h, w, v); }

void check_constant_channel(const ObsTensor& obs, int c, std::uint8_t v) {
  for (int y = 0; y < obs.height; ++y)
    for (int x = 0; x < obs.width; ++x) REQUIRE(obs.at(y, x, c) == v);
}

}  // namespace

TEST_CASE("luma examples") {
  CHECK(luma({255, 255, 255}) == 255);
  CHECK(luma({0, 0, 0}) == 0);
  CHECK(luma({255, 0, 0}) == 76);
  Rng rng(1);
  for (int i = 0; i < 5000; ++i) {
    const Rgb c{static_cast<std::uint8_t>(rng.below(256)), static_cast<std::uint8_t>(rng.below(256)),
                static_cast<std::uint8_t>(rng.below(256))};
    CHECK(luma(c) == oracle::luma(c.r, c.g, c.b));
  }
}

TEST_CASE("grayscale covers the whole screen") {
  Screen s;
  s.clear({255, 0, 0});
  s.set(5, 7, {255, 255, 255});
  const auto g = to_grayscale(s);
  CHECK(g.height == Screen::kHeight);
  CHECK(g.width == Screen::kWidth);
  CHECK(g.at(0, 0) == 76);
  CHECK(g.at(7, 5) == 255);
}

TEST_CASE("resize_area keeps constants") {
  for (int v : {0, 1, 127, 254, 255}) {
    const auto out = resize_area(filled(210, 160, static_cast<std::uint8_t>(v)), 84, 84);
    CHECK(out == filled(84, 84, static_cast<std::uint8_t>(v)));
  }
}

TEST_CASE("resize_area on the two-band example") {
  GrayImage img(4, 4);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) img.at(y, x) = y < 2 ? 0 : 255;
  // Rows [0,0,255,255] read top to bottom.
  const auto out = resize_area(img, 2, 2);
  CHECK(out.at(0, 0) == 0);
  CHECK(out.at(0, 1) == 0);
  CHECK(out.at(1, 0) == 255);
  CHECK(out.at(1, 1) == 255);
}

TEST_CASE("resize_area matches the box oracle on a checkerboard") {
  GrayImage img(210, 160);
  for (int y = 0; y < 210; ++y)
    for (int x = 0; x < 160; ++x) img.at(y, x) = ((x + y) % 2) ? 255 : 0;
  const auto out = resize_area(img, 84, 84);
  const auto ref = oracle::box_average(img.pixels, 210, 160, 84, 84);
  for (int i = 0; i < 84 * 84; ++i) {
    // Exact integer arithmetic, so the only slack is the half-up rounding.
    CHECK(out.pixels[static_cast<std::size_t>(i)] == static_cast<int>(std::floor(ref[static_cast<std::size_t>(i)] + 0.5 + 1e-9)));
  }
}

TEST_CASE("resize_area is within one unit of the oracle on random images") {
  Rng rng(77);
  int worst = 0;
  for (int n = 0; n < 100; ++n) {
    const int h = n < 50 ? 210 : rng.between(1, 120);
    const int w = n < 50 ? 160 : rng.between(1, 120);
    const int oh = n < 50 ? 84 : rng.between(1, 90);
    const int ow = n < 50 ? 84 : rng.between(1, 90);
    const auto img = random_image(rng, h, w);
    const auto out = resize_area(img, oh, ow);
    const auto ref = oracle::box_average(img.pixels, h, w, oh, ow);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      worst = std::max(worst, static_cast<int>(std::ceil(std::abs(out.pixels[i] - ref[i]) - 1e-9)));
    }
  }
  CHECK(worst <= 1);
}

TEST_CASE("resize_area rejects empty sizes") {
  CHECK_THROWS_AS(resize_area(GrayImage(0, 3), 2, 2), Error);
  CHECK_THROWS_AS(resize_area(GrayImage(3, 3), 0, 2), Error);
}

TEST_CASE("frame_skip sums rewards and stops on terminal") {
  const std::vector<RewardVector> frames{{1}, {0}, {0}, {1}};
  int calls = 0;
  auto r = frame_skip([&](int i) { ++calls; return frames[static_cast<std::size_t>(i)]; }, [] { return false; }, 4);
  CHECK(r.rewards == RewardVector{2});
  CHECK(r.frames == 4);
  CHECK_FALSE(r.terminal);

  calls = 0;
  r = frame_skip([&](int i) { ++calls; return RewardVector{i + 1, -(i + 1)}; }, [&] { return calls == 2; }, 4);
  CHECK(r.frames == 2);
  CHECK(r.terminal);
  CHECK(r.rewards == RewardVector{3, -3});

  r = frame_skip([](int) { return RewardVector{5}; }, [] { return false; }, 1);
  CHECK(r.frames == 1);
  CHECK(r.rewards == RewardVector{5});
}

TEST_CASE("frame stack seeds and slides") {
  FrameStack stack(4);
  const auto f0 = filled(2, 2, 10);
  stack.reset(f0);
  REQUIRE(stack.frames().size() == 4);
  for (const auto& f : stack.frames()) CHECK(f == f0);
  stack.push(filled(2, 2, 11));
  CHECK(stack.frames()[0] == f0);
  CHECK(stack.frames()[2] == f0);
  CHECK(stack.frames()[3] == filled(2, 2, 11));
  for (int v = 12; v < 16; ++v) stack.push(filled(2, 2, static_cast<std::uint8_t>(v)));
  for (int i = 0; i < 4; ++i) CHECK(stack.frames()[static_cast<std::size_t>(i)] == filled(2, 2, static_cast<std::uint8_t>(12 + i)));
  CHECK(stack.newest() == filled(2, 2, 15));
}

TEST_CASE("agent indicator channels are one-hot") {
  FrameStack stack(4);
  stack.reset(filled(3, 3, 9));
  auto obs = agent_indicator(stack, 0, 2);
  CHECK(obs.channels == 6);
  check_constant_channel(obs, 4, 255);
  check_constant_channel(obs, 5, 0);
  obs = agent_indicator(stack, 1, 2);
  check_constant_channel(obs, 4, 0);
  check_constant_channel(obs, 5, 255);
  obs = agent_indicator(stack, 2, 4);
  CHECK(obs.channels == 8);
  for (int c = 4; c < 8; ++c) check_constant_channel(obs, c, c == 6 ? 255 : 0);
  for (int c = 0; c < 4; ++c) check_constant_channel(obs, c, 9);
  CHECK(stack_tensor(stack).channels == 4);
}

TEST_CASE("clip_reward clamps and is a monotone idempotent map") {
  CHECK(clip_reward(10) == 1.0);
  CHECK(clip_reward(-3) == -1.0);
  CHECK(clip_reward(0) == 0.0);
  double prev = -2.0;
  for (int r = -50; r <= 50; ++r) {
    const double c = clip_reward(r);
    CHECK(clip_reward(c) == c);
    CHECK(c >= prev);
    CHECK((c > 0) == (r > 0));
    CHECK((c < 0) == (r < 0));
    CHECK(std::abs(c) <= 1.0);
    prev = c;
  }
}

TEST_CASE("sticky actions repeat at the configured rate") {
  auto rate = [](double p, std::uint64_t seed) {
    Rng rng(seed);
    int repeats = 0;
    for (int i = 0; i < 100'000; ++i) repeats += sticky(Action::kUp, Action::kDown, p, rng) == Action::kDown;
    return repeats / 100'000.0;
  };
  const double r = rate(0.25, 42);
  CHECK(r >= 0.24);
  CHECK(r <= 0.26);
  CHECK(rate(0.0, 1) == 0.0);
  CHECK(std::abs(rate(0.999, 3) - 0.999) <= 0.01);
}

TEST_CASE("observation tensors round-trip through the binary format") {
  Rng rng(5);
  ObsTensor obs{3, 5, 2, {}};
  for (int i = 0; i < 30; ++i) obs.data.push_back(static_cast<std::uint8_t>(rng.below(256)));
  std::stringstream buf;
  write_obs_binary(buf, obs);
  CHECK(buf.str().size() == 12 + 30);
  CHECK(read_obs_binary(buf) == obs);
  std::stringstream truncated(buf.str().substr(0, 20));
  CHECK_THROWS_AS(read_obs_binary(truncated), Error);
}

TEST_CASE("pipeline config validation") {
  PipelineConfig ok;
  CHECK_NOTHROW(ok.validate());
  for (auto bad : {PipelineConfig{.sticky_p = 1.0}, PipelineConfig{.sticky_p = -0.1}, PipelineConfig{.skip = 0},
                   PipelineConfig{.stack = 0}, PipelineConfig{.height = 0}}) {
    CHECK_THROWS_AS(bad.validate(), Error);
  }
}

TEST_CASE("pipeline observations are 84x84x(4+P)") {
  const std::pair<const char*, int> cases[] = {{"pong", 4}, {"pong", 6}, {"warlords", 1}, {"combat", 1}};
  for (const auto& [game, mode] : cases) {
    auto env = Environment::load(game);
    env.set_mode(ModeId{mode});
    Pipeline pipe(env, PipelineConfig{}, 1);
    pipe.reset(2);
    const int players = env.num_players();
    for (int p = 0; p < players; ++p) {
      const auto obs = pipe.observation(p);
      CHECK(obs.height == 84);
      CHECK(obs.width == 84);
      CHECK(obs.channels == 4 + players);
      CHECK(obs.data.size() == 84u * 84u * static_cast<std::size_t>(4 + players));
    }
    std::vector<Action> joint(static_cast<std::size_t>(players), Action::kNoop);
    const auto step = pipe.step(joint);
    CHECK(step.frames == 4);
    CHECK(pipe.observation(0).channels == 4 + players);
  }
}

TEST_CASE("pipeline replays are byte identical") {
  auto run = [] {
    auto env = Environment::load("pong");
    Pipeline pipe(env, PipelineConfig{}, 11);
    pipe.reset(12);
    Rng pick(13);
    const auto actions = env.minimal_action_set();
    std::vector<std::uint8_t> bytes;
    for (int i = 0; i < 200 && !env.game_over(); ++i) {
      std::vector<Action> joint;
      for (int p = 0; p < 2; ++p) joint.push_back(actions[static_cast<std::size_t>(pick.below(static_cast<int>(actions.size())))]);
      const auto s = pipe.step(joint);
      for (int r : s.raw_rewards) bytes.push_back(static_cast<std::uint8_t>(r + 10));
      const auto obs = pipe.observation(i % 2);
      bytes.insert(bytes.end(), obs.data.begin(), obs.data.end());
    }
    return bytes;
  };
  CHECK(run() == run());
}

TEST_CASE("identity pipeline is grayscale plus resize") {
  auto env = Environment::load("combat");
  PipelineConfig cfg{.sticky_p = 0.0, .skip = 1, .stack = 1, .clip = false, .indicator = false};
  Pipeline pipe(env, cfg, 1);
  pipe.reset(3);
  auto twin = Environment::load("combat");
  twin.reset(3);
  Rng pick(9);
  const auto actions = env.minimal_action_set();
  for (int i = 0; i < 100; ++i) {
    const std::vector<Action> joint{actions[static_cast<std::size_t>(pick.below(static_cast<int>(actions.size())))],
                                    actions[static_cast<std::size_t>(pick.below(static_cast<int>(actions.size())))]};
    const auto s = pipe.step(joint);
    const auto raw = twin.act(joint);
    CHECK(s.raw_rewards == raw);
    CHECK(pipe.executed() == joint);
    const auto expect = resize_area(to_grayscale(twin.screen_rgb()), 84, 84);
    const auto obs = pipe.observation(0);
    REQUIRE(obs.channels == 1);
    CHECK(obs.data == expect.pixels);
  }
}

TEST_CASE("evaluation pipelines never clip rewards") {
  for (bool clip : {false, true}) {
    auto env = Environment::load("space_invaders");
    Pipeline pipe(env, PipelineConfig{.clip = clip}, 4);
    pipe.reset(4);
    Rng pick(8);
    const auto actions = env.minimal_action_set();
    bool saw_large = false;
    for (int i = 0; i < 3000 && !env.game_over(); ++i) {
      const std::vector<Action> joint{actions[static_cast<std::size_t>(pick.below(static_cast<int>(actions.size())))],
                                      actions[static_cast<std::size_t>(pick.below(static_cast<int>(actions.size())))]};
      const auto s = pipe.step(joint);
      for (std::size_t p = 0; p < 2; ++p) {
        if (clip) {
          CHECK(s.rewards[p] == clip_reward(s.raw_rewards[p]));
        } else {
          CHECK(s.rewards[p] == static_cast<double>(s.raw_rewards[p]));
        }
        saw_large = saw_large || std::abs(s.raw_rewards[p]) > 1;
      }
    }
    CHECK(saw_large);
  }
}
