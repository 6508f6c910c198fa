/* Multi-agent arcade environments: C interface.
 *
 * All functions return a maale_status. On failure the thread's last error
 * message is available from maale_last_error(). Handles are opaque and owned
 * by the caller; free them with the matching *_free function. A handle may be
 * used from one thread at a time.
 *
 * Variable-length outputs use (buffer, capacity, count) triples: the count
 * is always written, and MAALE_ERR_INVALID_ARGUMENT is returned if the
 * capacity is too small. Passing a null buffer with capacity 0 queries the
 * required size. */
#ifndef MAALE_MAALE_H
#define MAALE_MAALE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MAALE_API __declspec(dllexport)
#else
#define MAALE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum maale_status {
  MAALE_OK = 0,
  MAALE_ERR_INVALID_ARGUMENT = 1,
  MAALE_ERR_UNKNOWN_GAME = 2,
  MAALE_ERR_INVALID_MODE = 3,
  MAALE_ERR_MODE_NOT_SET = 4,
  MAALE_ERR_ARITY = 5,
  MAALE_ERR_GAME_OVER = 6,
  MAALE_ERR_UNSUPPORTED_MODE = 7,
  MAALE_ERR_IO = 8,
  MAALE_ERR_FORMAT = 9,
  MAALE_ERR_INTERNAL = 10
} maale_status;

typedef enum maale_terminal_cause {
  MAALE_CAUSE_NONE = 0,
  MAALE_CAUSE_SCORE_LIMIT = 1,
  MAALE_CAUSE_LIVES = 2,
  MAALE_CAUSE_TIME = 3,
  MAALE_CAUSE_STALL = 4
} maale_terminal_cause;

#define MAALE_SCREEN_WIDTH 160
#define MAALE_SCREEN_HEIGHT 210
#define MAALE_SCREEN_BYTES (MAALE_SCREEN_WIDTH * MAALE_SCREEN_HEIGHT * 3)
#define MAALE_NUM_ACTIONS 18

typedef struct maale_env maale_env;
typedef struct maale_pipeline maale_pipeline;
typedef struct maale_policy maale_policy;
typedef struct maale_rng maale_rng;

MAALE_API const char* maale_version(void);
MAALE_API const char* maale_last_error(void);
MAALE_API const char* maale_status_name(maale_status status);
/* Null for values outside [0, MAALE_NUM_ACTIONS). */
MAALE_API const char* maale_action_name(int action);

/* Catalog ---------------------------------------------------------------- */

MAALE_API int maale_num_games(void);
MAALE_API maale_status maale_game_name(int index, const char** name);
/* JSON array describing every game and its mode registry. */
MAALE_API maale_status maale_catalog_json(char* buffer, size_t capacity, size_t* length);

/* Environment ------------------------------------------------------------ */

/* Loads a game with its default mode selected; call maale_env_reset next. */
MAALE_API maale_status maale_env_load(const char* name, maale_env** env);
MAALE_API void maale_env_free(maale_env* env);
MAALE_API maale_status maale_env_name(const maale_env* env, const char** name);
/* num_players < 0 lists every mode; results are sorted ascending. */
MAALE_API maale_status maale_env_available_modes(const maale_env* env, int num_players, int* modes,
                                                 size_t capacity, size_t* count);
MAALE_API maale_status maale_env_set_mode(maale_env* env, int mode);
MAALE_API maale_status maale_env_mode(const maale_env* env, int* mode);
MAALE_API maale_status maale_env_num_players(const maale_env* env, int* players);
MAALE_API maale_status maale_env_minimal_action_set(const maale_env* env, int* actions, size_t capacity,
                                                    size_t* count);
MAALE_API maale_status maale_env_set_stall(maale_env* env, int enabled, int threshold_frames,
                                           int forfeit_reward);
MAALE_API maale_status maale_env_reset(maale_env* env, uint64_t seed);
/* One action per player; writes one reward per player. */
MAALE_API maale_status maale_env_act(maale_env* env, const int* actions, size_t num_actions, int* rewards);
MAALE_API maale_status maale_env_game_over(const maale_env* env, int* game_over);
MAALE_API maale_status maale_env_terminal_cause(const maale_env* env, int* cause);
/* 0 means alive on the last life; -1 marks an eliminated player. */
MAALE_API maale_status maale_env_all_lives(const maale_env* env, int* lives, size_t capacity, size_t* count);
/* Row-major RGB, MAALE_SCREEN_BYTES bytes. */
MAALE_API maale_status maale_env_screen_rgb(const maale_env* env, uint8_t* rgb, size_t capacity);
MAALE_API maale_status maale_env_frame_number(const maale_env* env, int64_t* frame);

/* Observation pipeline --------------------------------------------------- */

typedef struct maale_pipeline_config {
  double sticky_p;
  int skip;
  int stack;
  int clip;
  int height;
  int width;
  int indicator;
} maale_pipeline_config;

MAALE_API void maale_pipeline_config_default(maale_pipeline_config* config);
/* The environment must outlive the pipeline. */
MAALE_API maale_status maale_pipeline_create(maale_env* env, const maale_pipeline_config* config,
                                             uint64_t sticky_seed, maale_pipeline** pipeline);
MAALE_API void maale_pipeline_free(maale_pipeline* pipeline);
MAALE_API maale_status maale_pipeline_reset(maale_pipeline* pipeline, uint64_t env_seed);
/* rewards: one double per player (clipped when configured). */
MAALE_API maale_status maale_pipeline_step(maale_pipeline* pipeline, const int* actions, size_t num_actions,
                                           double* rewards, int* terminal);
/* Height x width x channels bytes, channel-last. */
MAALE_API maale_status maale_pipeline_observation(const maale_pipeline* pipeline, int player, uint8_t* data,
                                                  size_t capacity, int* height, int* width, int* channels);

/* Policies --------------------------------------------------------------- */

MAALE_API maale_status maale_rng_create(uint64_t seed, maale_rng** rng);
MAALE_API void maale_rng_free(maale_rng* rng);

MAALE_API maale_status maale_policy_random(maale_policy** policy);
MAALE_API maale_status maale_policy_constant(int action, maale_policy** policy);
MAALE_API maale_status maale_policy_load(const char* path, maale_policy** policy);
/* Only trained or loaded policies can be saved. */
MAALE_API maale_status maale_policy_save(const maale_policy* policy, const char* path);
MAALE_API void maale_policy_free(maale_policy* policy);
MAALE_API maale_status maale_policy_describe(const maale_policy* policy, const char** text);
MAALE_API maale_status maale_policy_act(const maale_policy* policy, const maale_pipeline* pipeline, int player,
                                        maale_rng* rng, int* action);

/* Training and evaluation ------------------------------------------------ */

typedef enum maale_q_kind { MAALE_Q_TABULAR = 0, MAALE_Q_LINEAR = 1 } maale_q_kind;
typedef enum maale_features { MAALE_FEATURES_PIXELS = 0, MAALE_FEATURES_RAM_LIKE = 1 } maale_features;

typedef struct maale_train_config {
  double gamma;
  double lr;
  double final_epsilon;
  int64_t epsilon_timesteps;
  int64_t train_steps;
  uint64_t seed;
  int kind;     /* maale_q_kind */
  int features; /* maale_features */
  int max_episode_steps;
  int64_t eval_every;
  int eval_episodes;
  maale_pipeline_config pipeline;
} maale_train_config;

typedef struct maale_metric {
  double mean;
  double std_err;
  int episodes;
} maale_metric;

MAALE_API void maale_train_config_default(maale_train_config* config);
MAALE_API maale_status maale_train_self_play(const char* game, int mode, const maale_train_config* config,
                                             maale_policy** policy);
/* Learning curve of a trained policy as CSV. */
MAALE_API maale_status maale_policy_curve_csv(const maale_policy* policy, char* buffer, size_t capacity,
                                              size_t* length);

MAALE_API maale_status maale_evaluate_vs_random(const maale_policy* policy, const char* game, int mode,
                                                int episodes, uint64_t seed, int threads, maale_metric* metric);
MAALE_API maale_status maale_random_baseline(const char* game, int mode, int episodes, uint64_t seed,
                                             int threads, maale_metric* metric);
/* totals: one per player; cause: maale_terminal_cause. max_steps <= 0 uses the default cap. */
MAALE_API maale_status maale_run_episode(const char* game, int mode, const maale_policy* const* policies,
                                         size_t num_policies, uint64_t seed, int max_steps, int64_t* totals,
                                         int* length, int* cause);
/* scores and ranking: one entry per policy; ranking lists indices best first. */
MAALE_API maale_status maale_tournament(const maale_policy* const* policies, size_t num_policies,
                                        const char* game, int mode, int episodes_per_pair, uint64_t seed,
                                        int threads, double* scores, int* ranking);
/* mode < 0 uses the game's default. */
MAALE_API maale_status maale_bench(const char* game, int mode, double seconds, uint64_t seed, double* env_sps,
                                   double* pipeline_sps);

#ifdef __cplusplus
}
#endif

#endif
