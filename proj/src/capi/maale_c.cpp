#include "maale/maale.h"

#include <cstring>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "maale/core/environment.hpp"
#include "maale/core/error.hpp"
#include "maale/games/catalog.hpp"
#include "maale/harness/checkpoint.hpp"
#include "maale/harness/harness.hpp"
#include "maale/preprocessing/pipeline.hpp"

struct maale_env {
  maale::Environment env;
};

struct maale_pipeline {
  std::unique_ptr<maale::Pipeline> pipeline;
};

struct maale_rng {
  maale::Rng rng;
};

struct maale_policy {
  std::shared_ptr<const maale::Policy> policy;
  // Present for trained or loaded policies.
  std::optional<maale::Checkpoint> checkpoint;
  std::vector<maale::CurvePoint> curve;
  std::string description;
};

namespace {

thread_local std::string g_last_error;

maale_status to_status(maale::ErrorCode code) {
  using maale::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return MAALE_ERR_INVALID_ARGUMENT;
    case ErrorCode::kUnknownGame: return MAALE_ERR_UNKNOWN_GAME;
    case ErrorCode::kInvalidMode: return MAALE_ERR_INVALID_MODE;
    case ErrorCode::kModeNotSet: return MAALE_ERR_MODE_NOT_SET;
    case ErrorCode::kArity: return MAALE_ERR_ARITY;
    case ErrorCode::kGameOver: return MAALE_ERR_GAME_OVER;
    case ErrorCode::kUnsupportedMode: return MAALE_ERR_UNSUPPORTED_MODE;
    case ErrorCode::kIo: return MAALE_ERR_IO;
    case ErrorCode::kFormat: return MAALE_ERR_FORMAT;
  }
  return MAALE_ERR_INTERNAL;
}

maale_status fail(maale_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into a status and the last-error text.
template <typename Fn>
maale_status guard(Fn&& fn) noexcept {
  try {
    fn();
    return MAALE_OK;
  } catch (const maale::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MAALE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MAALE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MAALE_ERR_INTERNAL, "unknown internal error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw maale::Error(maale::ErrorCode::kInvalidArgument, what);
}

template <typename T>
void copy_out(const std::vector<T>& values, T* out, std::size_t capacity, std::size_t* count) {
  require(count != nullptr, "count pointer is null");
  *count = values.size();
  if (out == nullptr && capacity == 0) return;
  require(out != nullptr, "output buffer is null");
  require(capacity >= values.size(), "output buffer too small");
  std::copy(values.begin(), values.end(), out);
}

void copy_text(const std::string& text, char* buffer, std::size_t capacity, std::size_t* length) {
  require(length != nullptr, "length pointer is null");
  *length = text.size();
  if (buffer == nullptr && capacity == 0) return;
  require(buffer != nullptr, "output buffer is null");
  require(capacity > text.size(), "output buffer too small");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
}

std::vector<maale::Action> to_actions(const int* actions, std::size_t n) {
  require(actions != nullptr || n == 0, "actions pointer is null");
  std::vector<maale::Action> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = maale::action_from_int(actions[i]);
    if (!a) throw maale::Error(maale::ErrorCode::kInvalidArgument, "invalid action id " + std::to_string(actions[i]));
    out.push_back(*a);
  }
  return out;
}

maale::PipelineConfig to_config(const maale_pipeline_config* c) {
  maale::PipelineConfig out;
  if (c == nullptr) return out;
  out.sticky_p = c->sticky_p;
  out.skip = c->skip;
  out.stack = c->stack;
  out.clip = c->clip != 0;
  out.height = c->height;
  out.width = c->width;
  out.indicator = c->indicator != 0;
  out.validate();
  return out;
}

maale_policy* wrap(std::shared_ptr<const maale::Policy> p) {
  auto* h = new maale_policy;
  h->description = p->describe();
  h->policy = std::move(p);
  return h;
}

std::vector<const maale::Policy*> unwrap(const maale_policy* const* policies, std::size_t n) {
  require(policies != nullptr || n == 0, "policies pointer is null");
  std::vector<const maale::Policy*> out;
  for (std::size_t i = 0; i < n; ++i) {
    require(policies[i] != nullptr, "policy handle is null");
    out.push_back(policies[i]->policy.get());
  }
  return out;
}

maale::EvalOptions eval_options(int episodes, std::uint64_t seed, int threads) {
  maale::EvalOptions o;
  o.episodes = episodes;
  o.seed = seed;
  o.threads = threads < 1 ? 1 : threads;
  return o;
}

void fill_metric(const maale::MetricReport& r, maale_metric* m) {
  require(m != nullptr, "metric pointer is null");
  m->mean = r.mean;
  m->std_err = r.std_err;
  m->episodes = r.episodes;
}

}  // namespace

extern "C" {

const char* maale_version(void) { return "0.1.0"; }

const char* maale_last_error(void) { return g_last_error.c_str(); }

const char* maale_status_name(maale_status status) {
  switch (status) {
    case MAALE_OK: return "ok";
    case MAALE_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case MAALE_ERR_UNKNOWN_GAME: return "unknown-game";
    case MAALE_ERR_INVALID_MODE: return "invalid-mode";
    case MAALE_ERR_MODE_NOT_SET: return "mode-not-set";
    case MAALE_ERR_ARITY: return "arity";
    case MAALE_ERR_GAME_OVER: return "game-over";
    case MAALE_ERR_UNSUPPORTED_MODE: return "unsupported-mode";
    case MAALE_ERR_IO: return "io";
    case MAALE_ERR_FORMAT: return "format";
    case MAALE_ERR_INTERNAL: return "internal";
  }
  return "unknown-status";
}

const char* maale_action_name(int action) {
  const auto a = maale::action_from_int(action);
  return a ? maale::action_name(*a).data() : nullptr;
}

int maale_num_games(void) { return static_cast<int>(maale::game_catalog().size()); }

maale_status maale_game_name(int index, const char** name) {
  return guard([&] {
    require(name != nullptr, "name pointer is null");
    require(index >= 0 && index < maale_num_games(), "game index out of range");
    *name = maale::game_catalog()[static_cast<std::size_t>(index)].name.c_str();
  });
}

maale_status maale_catalog_json(char* buffer, size_t capacity, size_t* length) {
  return guard([&] { copy_text(maale::catalog_json(), buffer, capacity, length); });
}

maale_status maale_env_load(const char* name, maale_env** env) {
  return guard([&] {
    require(name != nullptr && env != nullptr, "null argument");
    *env = new maale_env{maale::Environment::load(name)};
  });
}

void maale_env_free(maale_env* env) { delete env; }

maale_status maale_env_name(const maale_env* env, const char** name) {
  return guard([&] {
    require(env != nullptr && name != nullptr, "null argument");
    *name = env->env.name().c_str();
  });
}

maale_status maale_env_available_modes(const maale_env* env, int num_players, int* modes, size_t capacity,
                                       size_t* count) {
  return guard([&] {
    require(env != nullptr, "env handle is null");
    std::vector<int> ids;
    for (auto m : env->env.available_modes(num_players < 0 ? std::nullopt : std::optional<int>(num_players))) {
      ids.push_back(m.value);
    }
    copy_out(ids, modes, capacity, count);
  });
}

maale_status maale_env_set_mode(maale_env* env, int mode) {
  return guard([&] {
    require(env != nullptr, "env handle is null");
    env->env.set_mode(maale::ModeId{mode});
  });
}

maale_status maale_env_mode(const maale_env* env, int* mode) {
  return guard([&] {
    require(env != nullptr && mode != nullptr, "null argument");
    *mode = env->env.mode().value;
  });
}

maale_status maale_env_num_players(const maale_env* env, int* players) {
  return guard([&] {
    require(env != nullptr && players != nullptr, "null argument");
    *players = env->env.num_players();
  });
}

maale_status maale_env_minimal_action_set(const maale_env* env, int* actions, size_t capacity, size_t* count) {
  return guard([&] {
    require(env != nullptr, "env handle is null");
    std::vector<int> ids;
    for (auto a : env->env.minimal_action_set()) ids.push_back(maale::to_int(a));
    copy_out(ids, actions, capacity, count);
  });
}

maale_status maale_env_set_stall(maale_env* env, int enabled, int threshold_frames, int forfeit_reward) {
  return guard([&] {
    require(env != nullptr, "env handle is null");
    env->env.set_stall_config({enabled != 0, threshold_frames, forfeit_reward});
  });
}

maale_status maale_env_reset(maale_env* env, uint64_t seed) {
  return guard([&] {
    require(env != nullptr, "env handle is null");
    env->env.reset(seed);
  });
}

maale_status maale_env_act(maale_env* env, const int* actions, size_t num_actions, int* rewards) {
  return guard([&] {
    require(env != nullptr && rewards != nullptr, "null argument");
    const auto joint = to_actions(actions, num_actions);
    const auto r = env->env.act(joint);
    std::copy(r.begin(), r.end(), rewards);
  });
}

maale_status maale_env_game_over(const maale_env* env, int* game_over) {
  return guard([&] {
    require(env != nullptr && game_over != nullptr, "null argument");
    *game_over = env->env.game_over() ? 1 : 0;
  });
}

maale_status maale_env_terminal_cause(const maale_env* env, int* cause) {
  return guard([&] {
    require(env != nullptr && cause != nullptr, "null argument");
    *cause = static_cast<int>(env->env.terminal_cause());
  });
}

maale_status maale_env_all_lives(const maale_env* env, int* lives, size_t capacity, size_t* count) {
  return guard([&] {
    require(env != nullptr, "env handle is null");
    copy_out(env->env.all_lives(), lives, capacity, count);
  });
}

maale_status maale_env_screen_rgb(const maale_env* env, uint8_t* rgb, size_t capacity) {
  return guard([&] {
    require(env != nullptr && rgb != nullptr, "null argument");
    require(capacity >= static_cast<size_t>(MAALE_SCREEN_BYTES), "screen buffer too small");
    const auto bytes = env->env.screen_rgb().bytes();
    std::memcpy(rgb, bytes.data(), bytes.size());
  });
}

maale_status maale_env_frame_number(const maale_env* env, int64_t* frame) {
  return guard([&] {
    require(env != nullptr && frame != nullptr, "null argument");
    *frame = env->env.frame_number();
  });
}

void maale_pipeline_config_default(maale_pipeline_config* config) {
  if (config == nullptr) return;
  const maale::PipelineConfig d;
  *config = {d.sticky_p, d.skip, d.stack, d.clip ? 1 : 0, d.height, d.width, d.indicator ? 1 : 0};
}

maale_status maale_pipeline_create(maale_env* env, const maale_pipeline_config* config, uint64_t sticky_seed,
                                   maale_pipeline** pipeline) {
  return guard([&] {
    require(env != nullptr && pipeline != nullptr, "null argument");
    auto p = std::make_unique<maale::Pipeline>(env->env, to_config(config), sticky_seed);
    *pipeline = new maale_pipeline{std::move(p)};
  });
}

void maale_pipeline_free(maale_pipeline* pipeline) { delete pipeline; }

maale_status maale_pipeline_reset(maale_pipeline* pipeline, uint64_t env_seed) {
  return guard([&] {
    require(pipeline != nullptr, "pipeline handle is null");
    pipeline->pipeline->reset(env_seed);
  });
}

maale_status maale_pipeline_step(maale_pipeline* pipeline, const int* actions, size_t num_actions,
                                 double* rewards, int* terminal) {
  return guard([&] {
    require(pipeline != nullptr && rewards != nullptr, "null argument");
    const auto joint = to_actions(actions, num_actions);
    const auto step = pipeline->pipeline->step(joint);
    std::copy(step.rewards.begin(), step.rewards.end(), rewards);
    if (terminal != nullptr) *terminal = step.terminal ? 1 : 0;
  });
}

maale_status maale_pipeline_observation(const maale_pipeline* pipeline, int player, uint8_t* data,
                                        size_t capacity, int* height, int* width, int* channels) {
  return guard([&] {
    require(pipeline != nullptr, "pipeline handle is null");
    const auto obs = pipeline->pipeline->observation(player);
    if (height) *height = obs.height;
    if (width) *width = obs.width;
    if (channels) *channels = obs.channels;
    if (data == nullptr && capacity == 0) return;
    require(data != nullptr && capacity >= obs.data.size(), "observation buffer too small");
    std::memcpy(data, obs.data.data(), obs.data.size());
  });
}

maale_status maale_rng_create(uint64_t seed, maale_rng** rng) {
  return guard([&] {
    require(rng != nullptr, "null argument");
    *rng = new maale_rng{maale::Rng(seed)};
  });
}

void maale_rng_free(maale_rng* rng) { delete rng; }

maale_status maale_policy_random(maale_policy** policy) {
  return guard([&] {
    require(policy != nullptr, "null argument");
    *policy = wrap(std::make_shared<maale::RandomPolicy>());
  });
}

maale_status maale_policy_constant(int action, maale_policy** policy) {
  return guard([&] {
    require(policy != nullptr, "null argument");
    const auto a = maale::action_from_int(action);
    require(a.has_value(), "invalid action id");
    *policy = wrap(maale::ScriptedPolicy::constant(*a));
  });
}

maale_status maale_policy_load(const char* path, maale_policy** policy) {
  return guard([&] {
    require(path != nullptr && policy != nullptr, "null argument");
    auto cp = maale::load_checkpoint_file(path);
    auto* h = wrap(cp.policy);
    h->checkpoint = std::move(cp);
    *policy = h;
  });
}

maale_status maale_policy_save(const maale_policy* policy, const char* path) {
  return guard([&] {
    require(policy != nullptr && path != nullptr, "null argument");
    require(policy->checkpoint.has_value(), "only trained or loaded policies can be saved");
    maale::save_checkpoint_file(path, *policy->checkpoint);
  });
}

void maale_policy_free(maale_policy* policy) { delete policy; }

maale_status maale_policy_describe(const maale_policy* policy, const char** text) {
  return guard([&] {
    require(policy != nullptr && text != nullptr, "null argument");
    *text = policy->description.c_str();
  });
}

maale_status maale_policy_act(const maale_policy* policy, const maale_pipeline* pipeline, int player,
                              maale_rng* rng, int* action) {
  return guard([&] {
    require(policy != nullptr && pipeline != nullptr && rng != nullptr && action != nullptr, "null argument");
    require(player >= 0 && player < pipeline->pipeline->num_players(), "player index out of range");
    *action = maale::to_int(policy->policy->act(*pipeline->pipeline, player, rng->rng));
  });
}

void maale_train_config_default(maale_train_config* config) {
  if (config == nullptr) return;
  const maale::TrainConfig d;
  config->gamma = d.gamma;
  config->lr = d.lr;
  config->final_epsilon = d.final_epsilon;
  config->epsilon_timesteps = d.epsilon_timesteps;
  config->train_steps = d.train_steps;
  config->seed = d.seed;
  config->kind = static_cast<int>(d.kind);
  config->features = d.features == maale::FeatureMode::kRamLikeState ? MAALE_FEATURES_RAM_LIKE : MAALE_FEATURES_PIXELS;
  config->max_episode_steps = d.max_episode_steps;
  config->eval_every = d.eval_every;
  config->eval_episodes = d.eval_episodes;
  maale_pipeline_config_default(&config->pipeline);
  config->pipeline.clip = d.pipeline.clip ? 1 : 0;
}

maale_status maale_train_self_play(const char* game, int mode, const maale_train_config* config,
                                   maale_policy** policy) {
  return guard([&] {
    require(game != nullptr && config != nullptr && policy != nullptr, "null argument");
    require(config->kind == MAALE_Q_TABULAR || config->kind == MAALE_Q_LINEAR, "unknown policy kind");
    require(config->features == MAALE_FEATURES_PIXELS || config->features == MAALE_FEATURES_RAM_LIKE,
            "unknown feature mode");
    maale::TrainConfig c;
    c.gamma = config->gamma;
    c.lr = config->lr;
    c.final_epsilon = config->final_epsilon;
    c.epsilon_timesteps = config->epsilon_timesteps;
    c.train_steps = config->train_steps;
    c.seed = config->seed;
    c.kind = config->kind == MAALE_Q_TABULAR ? maale::QKind::kTabular : maale::QKind::kLinear;
    c.features = config->features == MAALE_FEATURES_RAM_LIKE ? maale::FeatureMode::kRamLikeState
                                                             : maale::FeatureMode::kDownsampledPixels;
    c.max_episode_steps = config->max_episode_steps;
    c.eval_every = config->eval_every;
    c.eval_episodes = config->eval_episodes;
    c.pipeline = to_config(&config->pipeline);
    c.unused = maale::TrainConfig::default_unused();
    auto result = maale::train_self_play(game, maale::ModeId{mode}, c);
    auto* h = wrap(result.policy);
    h->checkpoint = maale::Checkpoint{maale::find_game(game).name, maale::ModeId{mode}, c, result.policy};
    h->curve = std::move(result.curve);
    *policy = h;
  });
}

maale_status maale_policy_curve_csv(const maale_policy* policy, char* buffer, size_t capacity, size_t* length) {
  return guard([&] {
    require(policy != nullptr, "policy handle is null");
    std::ostringstream s;
    maale::write_curve_csv(s, policy->curve);
    copy_text(s.str(), buffer, capacity, length);
  });
}

maale_status maale_evaluate_vs_random(const maale_policy* policy, const char* game, int mode, int episodes,
                                      uint64_t seed, int threads, maale_metric* metric) {
  return guard([&] {
    require(policy != nullptr && game != nullptr, "null argument");
    fill_metric(maale::evaluate_vs_random(*policy->policy, game, maale::ModeId{mode},
                                          eval_options(episodes, seed, threads)),
                metric);
  });
}

maale_status maale_random_baseline(const char* game, int mode, int episodes, uint64_t seed, int threads,
                                   maale_metric* metric) {
  return guard([&] {
    require(game != nullptr, "null argument");
    fill_metric(maale::random_baseline(game, maale::ModeId{mode}, eval_options(episodes, seed, threads)), metric);
  });
}

maale_status maale_run_episode(const char* game, int mode, const maale_policy* const* policies,
                               size_t num_policies, uint64_t seed, int max_steps, int64_t* totals, int* length,
                               int* cause) {
  return guard([&] {
    require(game != nullptr && totals != nullptr, "null argument");
    const auto r = maale::run_episode(game, maale::ModeId{mode}, unwrap(policies, num_policies), seed,
                                      max_steps > 0 ? max_steps : maale::kDefaultMaxSteps);
    std::copy(r.totals.begin(), r.totals.end(), totals);
    if (length) *length = r.length;
    if (cause) *cause = static_cast<int>(r.cause);
  });
}

maale_status maale_tournament(const maale_policy* const* policies, size_t num_policies, const char* game,
                              int mode, int episodes_per_pair, uint64_t seed, int threads, double* scores,
                              int* ranking) {
  return guard([&] {
    require(game != nullptr && scores != nullptr && ranking != nullptr, "null argument");
    std::vector<maale::NamedPolicy> named;
    for (std::size_t i = 0; i < num_policies; ++i) {
      require(policies != nullptr && policies[i] != nullptr, "policy handle is null");
      named.push_back({policies[i]->description, policies[i]->policy});
    }
    const auto r = maale::tournament(named, game, maale::ModeId{mode}, episodes_per_pair, seed,
                                     threads < 1 ? 1 : threads);
    std::copy(r.scores.begin(), r.scores.end(), scores);
    std::copy(r.ranking.begin(), r.ranking.end(), ranking);
  });
}

maale_status maale_bench(const char* game, int mode, double seconds, uint64_t seed, double* env_sps,
                         double* pipeline_sps) {
  return guard([&] {
    require(game != nullptr && env_sps != nullptr && pipeline_sps != nullptr, "null argument");
    const auto r = maale::bench(game, mode < 0 ? std::nullopt : std::optional<maale::ModeId>(maale::ModeId{mode}),
                                seconds, seed);
    *env_sps = r.env_sps;
    *pipeline_sps = r.pipeline_sps;
  });
}

}  // extern "C"
