#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "maale/maale.h"

extern "C" int maale_c_header_smoke(void);

namespace {

struct Env {
  maale_env* h = nullptr;
  explicit Env(const char* name) { REQUIRE(maale_env_load(name, &h) == MAALE_OK); }
  ~Env() { maale_env_free(h); }
};

std::vector<int> minimal(const maale_env* env) {
  size_t n = 0;
  REQUIRE(maale_env_minimal_action_set(env, nullptr, 0, &n) == MAALE_OK);
  std::vector<int> out(n);
  REQUIRE(maale_env_minimal_action_set(env, out.data(), out.size(), &n) == MAALE_OK);
  return out;
}

std::vector<int> modes(const maale_env* env, int players) {
  size_t n = 0;
  REQUIRE(maale_env_available_modes(env, players, nullptr, 0, &n) == MAALE_OK);
  std::vector<int> out(n);
  REQUIRE(maale_env_available_modes(env, players, out.data(), out.size(), &n) == MAALE_OK);
  return out;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("header compiles as C") { CHECK(maale_c_header_smoke() == 2); }

TEST_CASE("metadata and names") {
  CHECK(std::strlen(maale_version()) > 0);
  CHECK(std::string(maale_status_name(MAALE_ERR_ARITY)) == "arity");
  CHECK(std::string(maale_action_name(0)) == "NOOP");
  CHECK(std::string(maale_action_name(17)) == "DOWNLEFTFIRE");
  CHECK(maale_action_name(18) == nullptr);
  CHECK(maale_num_games() == 7);
  const char* name = nullptr;
  REQUIRE(maale_game_name(0, &name) == MAALE_OK);
  CHECK(std::string(name) == "combat");
  CHECK(maale_game_name(7, &name) == MAALE_ERR_INVALID_ARGUMENT);
  size_t len = 0;
  char small[4];
  CHECK(maale_catalog_json(small, sizeof small, &len) == MAALE_ERR_INVALID_ARGUMENT);
  CHECK(len > sizeof small);
}

TEST_CASE("catalog json copies fully when the buffer fits") {
  size_t len = 0;
  REQUIRE(maale_catalog_json(nullptr, 0, &len) == MAALE_OK);
  std::vector<char> buf(len + 1);
  REQUIRE(maale_catalog_json(buf.data(), buf.size(), &len) == MAALE_OK);
  const std::string json(buf.data());
  CHECK(json.size() == len);
  CHECK(json.front() == '[');
  CHECK(json.find("\"warlords\"") != std::string::npos);
}

TEST_CASE("load errors") {
  maale_env* env = nullptr;
  CHECK(maale_env_load("tetris", &env) == MAALE_ERR_UNKNOWN_GAME);
  CHECK(env == nullptr);
  CHECK(std::string(maale_last_error()).find("combat") != std::string::npos);
  CHECK(maale_env_load(nullptr, &env) == MAALE_ERR_INVALID_ARGUMENT);
  CHECK(maale_env_load("pong", nullptr) == MAALE_ERR_INVALID_ARGUMENT);
  Env pong("pong");
  const char* name = nullptr;
  REQUIRE(maale_env_name(pong.h, &name) == MAALE_OK);
  CHECK(std::string(name) == "video_olympics");
}

TEST_CASE("modes through the C interface") {
  Env vo("video_olympics");
  CHECK(modes(vo.h, 4) == std::vector<int>{6, 21, 33, 41, 49});
  CHECK(modes(vo.h, 2) == std::vector<int>{4, 19, 39, 45});
  CHECK(modes(vo.h, -1).size() == 9);
  int mode = 0;
  REQUIRE(maale_env_mode(vo.h, &mode) == MAALE_OK);
  CHECK(mode == 4);
  CHECK(maale_env_set_mode(vo.h, 5) == MAALE_ERR_INVALID_MODE);
  REQUIRE(maale_env_set_mode(vo.h, 33) == MAALE_OK);
  int players = 0;
  REQUIRE(maale_env_num_players(vo.h, &players) == MAALE_OK);
  CHECK(players == 4);
  REQUIRE(maale_env_set_mode(vo.h, 19) == MAALE_OK);
  CHECK(maale_env_reset(vo.h, 1) == MAALE_ERR_UNSUPPORTED_MODE);
  size_t n = 0;
  int one[1];
  CHECK(maale_env_available_modes(vo.h, 4, one, 1, &n) == MAALE_ERR_INVALID_ARGUMENT);
  CHECK(n == 5);
}

TEST_CASE("acting, lives, screen and errors") {
  Env env("combat");
  int rewards[2];
  const int joint[2] = {0, 0};
  CHECK(maale_env_act(env.h, joint, 2, rewards) == MAALE_ERR_MODE_NOT_SET);
  REQUIRE(maale_env_reset(env.h, 5) == MAALE_OK);
  CHECK(maale_env_act(env.h, joint, 1, rewards) == MAALE_ERR_ARITY);
  const int bad[2] = {0, 18};
  CHECK(maale_env_act(env.h, bad, 2, rewards) == MAALE_ERR_INVALID_ARGUMENT);
  REQUIRE(maale_env_act(env.h, joint, 2, rewards) == MAALE_OK);
  int64_t frame = 0;
  REQUIRE(maale_env_frame_number(env.h, &frame) == MAALE_OK);
  CHECK(frame == 1);
  int lives[2] = {9, 9};
  size_t count = 0;
  REQUIRE(maale_env_all_lives(env.h, lives, 2, &count) == MAALE_OK);
  CHECK(count == 2);
  CHECK(lives[0] == 0);
  std::vector<uint8_t> rgb(MAALE_SCREEN_BYTES);
  CHECK(maale_env_screen_rgb(env.h, rgb.data(), 10) == MAALE_ERR_INVALID_ARGUMENT);
  REQUIRE(maale_env_screen_rgb(env.h, rgb.data(), rgb.size()) == MAALE_OK);
  bool nonzero = false;
  for (auto b : rgb) nonzero = nonzero || b != 0;
  CHECK(nonzero);
  int over = 1, cause = -1;
  while (true) {
    REQUIRE(maale_env_game_over(env.h, &over) == MAALE_OK);
    if (over) break;
    REQUIRE(maale_env_act(env.h, joint, 2, rewards) == MAALE_OK);
  }
  REQUIRE(maale_env_terminal_cause(env.h, &cause) == MAALE_OK);
  CHECK(cause == MAALE_CAUSE_TIME);
  CHECK(maale_env_act(env.h, joint, 2, rewards) == MAALE_ERR_GAME_OVER);
}

TEST_CASE("stall forfeit through the C interface") {
  Env env("othello");
  REQUIRE(maale_env_set_stall(env.h, 1, 50, -1) == MAALE_OK);
  REQUIRE(maale_env_reset(env.h, 1) == MAALE_OK);
  const int joint[2] = {0, 0};
  int rewards[2] = {0, 0};
  int over = 0, frames = 0;
  while (!over) {
    REQUIRE(maale_env_act(env.h, joint, 2, rewards) == MAALE_OK);
    REQUIRE(maale_env_game_over(env.h, &over) == MAALE_OK);
    ++frames;
  }
  CHECK(frames == 50);
  CHECK(rewards[0] == -1);
  CHECK(rewards[1] == 1);
  int cause = 0;
  maale_env_terminal_cause(env.h, &cause);
  CHECK(cause == MAALE_CAUSE_STALL);
  CHECK(maale_env_set_stall(env.h, 1, 0, -1) == MAALE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("pipeline through the C interface") {
  Env env("warlords");
  maale_pipeline_config cfg;
  maale_pipeline_config_default(&cfg);
  CHECK(cfg.sticky_p == 0.25);
  CHECK(cfg.skip == 4);
  CHECK(cfg.stack == 4);
  CHECK(cfg.height == 84);
  maale_pipeline* pipe = nullptr;
  REQUIRE(maale_pipeline_create(env.h, &cfg, 3, &pipe) == MAALE_OK);
  REQUIRE(maale_pipeline_reset(pipe, 4) == MAALE_OK);
  std::vector<uint8_t> obs(84 * 84 * 8);
  int h = 0, w = 0, c = 0;
  REQUIRE(maale_pipeline_observation(pipe, 2, obs.data(), obs.size(), &h, &w, &c) == MAALE_OK);
  CHECK(h == 84);
  CHECK(w == 84);
  CHECK(c == 8);
  CHECK(obs[6] == 255);
  CHECK(obs[5] == 0);
  CHECK(maale_pipeline_observation(pipe, 4, obs.data(), obs.size(), &h, &w, &c) == MAALE_ERR_INVALID_ARGUMENT);
  const int joint[4] = {0, 3, 4, 0};
  double rewards[4];
  int terminal = 1;
  REQUIRE(maale_pipeline_step(pipe, joint, 4, rewards, &terminal) == MAALE_OK);
  CHECK(terminal == 0);
  CHECK(maale_pipeline_step(pipe, joint, 3, rewards, &terminal) == MAALE_ERR_ARITY);
  maale_pipeline_free(pipe);

  cfg.skip = 0;
  CHECK(maale_pipeline_create(env.h, &cfg, 3, &pipe) == MAALE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("policies act within the minimal action set") {
  Env env("space_invaders");
  const auto allowed = minimal(env.h);
  maale_pipeline_config cfg;
  maale_pipeline_config_default(&cfg);
  maale_pipeline* pipe = nullptr;
  REQUIRE(maale_pipeline_create(env.h, &cfg, 1, &pipe) == MAALE_OK);
  REQUIRE(maale_pipeline_reset(pipe, 1) == MAALE_OK);
  maale_rng* rng = nullptr;
  REQUIRE(maale_rng_create(7, &rng) == MAALE_OK);
  maale_policy* random = nullptr;
  REQUIRE(maale_policy_random(&random) == MAALE_OK);
  for (int i = 0; i < 200; ++i) {
    int a = -1;
    REQUIRE(maale_policy_act(random, pipe, i % 2, rng, &a) == MAALE_OK);
    CHECK(std::find(allowed.begin(), allowed.end(), a) != allowed.end());
  }
  const char* text = nullptr;
  REQUIRE(maale_policy_describe(random, &text) == MAALE_OK);
  CHECK(std::string(text) == "random");
  maale_policy* fire = nullptr;
  REQUIRE(maale_policy_constant(1, &fire) == MAALE_OK);
  int a = -1;
  REQUIRE(maale_policy_act(fire, pipe, 0, rng, &a) == MAALE_OK);
  CHECK(a == 1);
  CHECK(maale_policy_constant(99, &fire) == MAALE_ERR_INVALID_ARGUMENT);
  CHECK(maale_policy_save(random, temp_path("maale_capi_random.maq").c_str()) == MAALE_ERR_INVALID_ARGUMENT);
  maale_policy_free(random);
  maale_policy_free(fire);
  maale_rng_free(rng);
  maale_pipeline_free(pipe);
}

TEST_CASE("train, save, load, evaluate and compete") {
  maale_train_config cfg;
  maale_train_config_default(&cfg);
  CHECK(cfg.gamma == 0.99);
  CHECK(cfg.lr == 0.0001);
  CHECK(cfg.epsilon_timesteps == 200000);
  CHECK(cfg.pipeline.clip == 1);
  cfg.train_steps = 2000;
  cfg.epsilon_timesteps = 1000;
  cfg.eval_every = 1000;
  cfg.eval_episodes = 1;
  cfg.seed = 3;
  maale_policy* trained = nullptr;
  REQUIRE(maale_train_self_play("pong", 4, &cfg, &trained) == MAALE_OK);
  size_t len = 0;
  REQUIRE(maale_policy_curve_csv(trained, nullptr, 0, &len) == MAALE_OK);
  std::vector<char> csv(len + 1);
  REQUIRE(maale_policy_curve_csv(trained, csv.data(), csv.size(), &len) == MAALE_OK);
  CHECK(std::string(csv.data()).rfind("step,mean_reward_per_step,stderr,episodes", 0) == 0);

  const auto path = temp_path("maale_capi_trained.maq");
  REQUIRE(maale_policy_save(trained, path.c_str()) == MAALE_OK);
  maale_policy* loaded = nullptr;
  REQUIRE(maale_policy_load(path.c_str(), &loaded) == MAALE_OK);
  CHECK(maale_policy_load("/nonexistent/none.maq", &loaded) == MAALE_ERR_IO);
  const auto junk = temp_path("maale_capi_junk.maq");
  {
    FILE* f = std::fopen(junk.c_str(), "wb");
    std::fputs("not a checkpoint", f);
    std::fclose(f);
  }
  maale_policy* none = nullptr;
  CHECK(maale_policy_load(junk.c_str(), &none) == MAALE_ERR_FORMAT);

  maale_metric a{}, b{};
  REQUIRE(maale_evaluate_vs_random(trained, "pong", 4, 3, 11, 1, &a) == MAALE_OK);
  REQUIRE(maale_evaluate_vs_random(loaded, "pong", 4, 3, 11, 2, &b) == MAALE_OK);
  CHECK(a.mean == b.mean);
  CHECK(a.episodes == 3);
  maale_metric base{};
  REQUIRE(maale_random_baseline("pong", 4, 3, 11, 1, &base) == MAALE_OK);
  CHECK(base.std_err >= 0);
  CHECK(maale_random_baseline("pong", 4, 0, 11, 1, &base) == MAALE_ERR_INVALID_ARGUMENT);

  maale_policy* random = nullptr;
  REQUIRE(maale_policy_random(&random) == MAALE_OK);
  const maale_policy* seats[2] = {loaded, random};
  int64_t totals[2];
  int length = 0, cause = 0;
  REQUIRE(maale_run_episode("pong", 4, seats, 2, 5, 0, totals, &length, &cause) == MAALE_OK);
  CHECK(totals[0] == -totals[1]);
  CHECK(length >= 1);
  CHECK(cause != MAALE_CAUSE_NONE);
  CHECK(maale_run_episode("pong", 4, seats, 1, 5, 0, totals, &length, &cause) == MAALE_ERR_ARITY);

  double scores[2];
  int ranking[2];
  REQUIRE(maale_tournament(seats, 2, "pong", 4, 2, 1, 1, scores, ranking) == MAALE_OK);
  CHECK(scores[0] == doctest::Approx(-scores[1]));
  CHECK(ranking[0] != ranking[1]);
  CHECK(maale_tournament(seats, 1, "pong", 4, 2, 1, 1, scores, ranking) == MAALE_ERR_ARITY);
  CHECK(maale_tournament(seats, 2, "warlords", 1, 2, 1, 1, scores, ranking) == MAALE_ERR_UNSUPPORTED_MODE);

  double env_sps = 0, pipe_sps = 0;
  REQUIRE(maale_bench("pong", -1, 0.2, 1, &env_sps, &pipe_sps) == MAALE_OK);
  CHECK(env_sps > 0);
  CHECK(pipe_sps > 0);
  CHECK(maale_bench("nope", -1, 0.2, 1, &env_sps, &pipe_sps) == MAALE_ERR_UNKNOWN_GAME);

  maale_policy_free(random);
  maale_policy_free(loaded);
  maale_policy_free(trained);
  std::filesystem::remove(path);
  std::filesystem::remove(junk);
}

TEST_CASE("free functions accept null") {
  maale_env_free(nullptr);
  maale_pipeline_free(nullptr);
  maale_policy_free(nullptr);
  maale_rng_free(nullptr);
  CHECK(maale_env_reset(nullptr, 1) == MAALE_ERR_INVALID_ARGUMENT);
}
