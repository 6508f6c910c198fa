#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "maale/core/types.hpp"
#include "maale/harness/policy.hpp"
#include "maale/preprocessing/pipeline.hpp"

namespace maale {

inline constexpr int kDefaultMaxSteps = 50'000;

struct EpisodeResult {
  std::vector<long long> totals;  // raw (unclipped) reward per seat
  int length = 0;                 // agent steps, each `skip` frames or fewer
  TerminalCause cause = TerminalCause::kNone;
};

struct MetricReport {
  double mean = 0.0;  // mean over episodes of seat-0 reward per step
  double std_err = 0.0;
  int episodes = 0;
  std::string opponent;
  std::uint64_t seed = 0;
  std::vector<double> per_episode;
};

// Mean and standard error (sample deviation over sqrt(n); 0 when n == 1).
MetricReport summarize(const std::vector<double>& samples);

// Seeds of episode i under base seed s are derived with mix_seed, so runs are
// reproducible and independent of thread scheduling.
std::uint64_t episode_seed(std::uint64_t base, int episode);

// Plays one episode. `policies` holds one policy per seat. The pipeline
// config is used as given (evaluation leaves clipping off).
EpisodeResult run_episode(const std::string& game, ModeId mode, const std::vector<const Policy*>& policies,
                          std::uint64_t seed, int max_steps = kDefaultMaxSteps,
                          const PipelineConfig& config = {});

struct EvalOptions {
  int episodes = 100;
  std::uint64_t seed = 0;
  int threads = 1;
  int max_steps = kDefaultMaxSteps;
  PipelineConfig pipeline{};
};

// `policy` in seat 0 against fresh random policies in the other seats.
MetricReport evaluate_vs_random(const Policy& policy, const std::string& game, ModeId mode,
                                const EvalOptions& options);
MetricReport random_baseline(const std::string& game, ModeId mode, const EvalOptions& options);

struct TrainConfig {
  double gamma = 0.99;
  double lr = 0.0001;
  double final_epsilon = 0.01;
  long long epsilon_timesteps = 200'000;
  long long train_steps = 200'000;
  std::uint64_t seed = 0;
  QKind kind = QKind::kTabular;
  FeatureMode features = FeatureMode::kRamLikeState;
  int max_episode_steps = kDefaultMaxSteps;
  PipelineConfig pipeline{.clip = true};
  // Learning-curve points: every `eval_every` steps run `eval_episodes`
  // evaluation episodes against random (0 disables).
  long long eval_every = 0;
  int eval_episodes = 10;
  // Settings of the distributed learner that the single-process trainer
  // accepts and echoes but does not use (buffer_size, n_step, ...).
  nlohmann::json unused;

  void validate() const;
  nlohmann::json to_json() const;
  static TrainConfig from_json(const nlohmann::json& j);
  // The distributed-learner settings carried in `unused` by default.
  static nlohmann::json default_unused();
};

// Linear decay from 1 to final_epsilon over epsilon_timesteps, then flat.
double epsilon_at(long long step, double final_epsilon, long long epsilon_timesteps);

struct CurvePoint {
  long long step = 0;
  MetricReport report;
};

struct TrainResult {
  std::shared_ptr<QPolicy> policy;  // greedy (epsilon 0)
  std::vector<CurvePoint> curve;
  long long episodes = 0;
};

// Self-play Q-learning with one parameter set shared by every seat.
TrainResult train_self_play(const std::string& game, ModeId mode, const TrainConfig& config);

struct NamedPolicy {
  std::string name;
  std::shared_ptr<const Policy> policy;
};

struct PairResult {
  int first = 0;
  int second = 0;
  // `first`'s reward per step against `second`, over both seat orders.
  MetricReport report;
};

struct TournamentResult {
  std::vector<PairResult> pairs;
  // Indices into the input, best first.
  std::vector<int> ranking;
  std::vector<double> scores;  // per policy, mean over its pairings
};

// Round robin over both seat orders; requires a two-player game.
TournamentResult tournament(const std::vector<NamedPolicy>& policies, const std::string& game, ModeId mode,
                            int episodes_per_pair, std::uint64_t seed, int threads = 1);

// CSV with columns step, mean_reward_per_step, stderr, episodes.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve);
std::string report_line(const MetricReport& report);

}  // namespace maale

namespace maale {

struct BenchResult {
  double env_sps = 0.0;       // raw frames per second, screen rendered each frame
  double pipeline_sps = 0.0;  // agent steps per second through the full pipeline
  long long env_steps = 0;
  long long pipeline_steps = 0;
};

// Random play for about `seconds`, split evenly between the two measurements.
BenchResult bench(const std::string& game, std::optional<ModeId> mode, double seconds, std::uint64_t seed);

}  // namespace maale
