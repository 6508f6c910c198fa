#include "maale/harness/harness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "maale/core/environment.hpp"
#include "maale/core/error.hpp"

namespace maale {

MetricReport summarize(const std::vector<double>& samples) {
  if (samples.empty()) throw Error(ErrorCode::kInvalidArgument, "a metric needs at least one episode");
  MetricReport r;
  r.episodes = static_cast<int>(samples.size());
  r.per_episode = samples;
  const double n = static_cast<double>(samples.size());
  r.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - r.mean) * (s - r.mean);
    r.std_err = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  }
  return r;
}

std::uint64_t episode_seed(std::uint64_t base, int episode) {
  return mix_seed(base, static_cast<std::uint64_t>(episode));
}

EpisodeResult run_episode(const std::string& game, ModeId mode, const std::vector<const Policy*>& policies,
                          std::uint64_t seed, int max_steps, const PipelineConfig& config) {
  auto env = Environment::load(game);
  env.set_mode(mode);
  const int players = env.num_players();
  if (static_cast<int>(policies.size()) != players) {
    throw Error(ErrorCode::kArity, "expected " + std::to_string(players) + " policies, got " +
                                       std::to_string(policies.size()));
  }
  Pipeline pipe(env, config, mix_seed(seed, 1));
  pipe.reset(mix_seed(seed, 0));
  std::vector<Rng> rngs;
  for (int p = 0; p < players; ++p) rngs.emplace_back(mix_seed(seed, 2 + static_cast<std::uint64_t>(p)));

  EpisodeResult result;
  result.totals.assign(static_cast<std::size_t>(players), 0);
  std::vector<Action> joint(static_cast<std::size_t>(players));
  while (true) {
    for (int p = 0; p < players; ++p) {
      joint[static_cast<std::size_t>(p)] = policies[static_cast<std::size_t>(p)]->act(pipe, p, rngs[static_cast<std::size_t>(p)]);
    }
    const auto step = pipe.step(joint);
    for (int p = 0; p < players; ++p) result.totals[static_cast<std::size_t>(p)] += step.raw_rewards[static_cast<std::size_t>(p)];
    ++result.length;
    if (step.terminal) {
      result.cause = env.terminal_cause();
      break;
    }
    if (result.length >= max_steps) {
      result.cause = TerminalCause::kTime;
      break;
    }
  }
  return result;
}

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers; results land in
// slot i so the output order never depends on scheduling.
template <typename Fn>
std::vector<double> parallel_samples(int n, int threads, Fn fn) {
  std::vector<double> out(static_cast<std::size_t>(n));
  threads = std::clamp(threads, 1, std::max(n, 1));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < n; i += threads) out[static_cast<std::size_t>(i)] = fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

double per_step(const EpisodeResult& r, int seat) {
  return static_cast<double>(r.totals[static_cast<std::size_t>(seat)]) / static_cast<double>(r.length);
}

}  // namespace

MetricReport evaluate_vs_random(const Policy& policy, const std::string& game, ModeId mode,
                                const EvalOptions& options) {
  if (options.episodes < 1) throw Error(ErrorCode::kInvalidArgument, "episodes must be at least 1");
  auto probe = Environment::load(game);
  probe.set_mode(mode);
  const int players = probe.num_players();
  const RandomPolicy random;
  std::vector<const Policy*> seats(static_cast<std::size_t>(players), &random);
  seats[0] = &policy;
  const auto samples = parallel_samples(options.episodes, options.threads, [&](int i) {
    return per_step(run_episode(game, mode, seats, episode_seed(options.seed, i), options.max_steps, options.pipeline), 0);
  });
  MetricReport r = summarize(samples);
  r.opponent = "random";
  r.seed = options.seed;
  return r;
}

MetricReport random_baseline(const std::string& game, ModeId mode, const EvalOptions& options) {
  return evaluate_vs_random(RandomPolicy{}, game, mode, options);
}

double epsilon_at(long long step, double final_epsilon, long long epsilon_timesteps) {
  if (epsilon_timesteps <= 0 || step >= epsilon_timesteps) return final_epsilon;
  const double frac = static_cast<double>(step) / static_cast<double>(epsilon_timesteps);
  return 1.0 + frac * (final_epsilon - 1.0);
}

nlohmann::json TrainConfig::default_unused() {
  return {{"adam_epsilon", 0.00015},
          {"buffer_size", 80000},
          {"double_q", true},
          {"dueling", true},
          {"final_prioritized_replay_beta", 1.0},
          {"learning_starts", 80000},
          {"n_step", 3},
          {"num_atoms", 1},
          {"num_envs_per_worker", 8},
          {"num_gpus", 1},
          {"num_workers", 8},
          {"prioritized_replay", true},
          {"prioritized_replay_alpha", 0.5},
          {"prioritized_replay_beta", 0.4},
          {"prioritized_replay_beta_annealing_timesteps", 2000000},
          {"rollout_fragment_length", 32},
          {"target_network_update_freq", 50000},
          {"timesteps_per_iteration", 25000},
          {"train_batch_size", 512}};
}

void TrainConfig::validate() const {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be in (0, 1]");
  if (!(final_epsilon >= 0.0 && final_epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "final_epsilon must be in [0, 1]");
  }
  if (!(lr > 0.0)) throw Error(ErrorCode::kInvalidArgument, "lr must be positive");
  if (train_steps < 0) throw Error(ErrorCode::kInvalidArgument, "train_steps must be non-negative");
  if (epsilon_timesteps < 0) throw Error(ErrorCode::kInvalidArgument, "epsilon_timesteps must be non-negative");
  if (max_episode_steps < 1) throw Error(ErrorCode::kInvalidArgument, "max_episode_steps must be positive");
  pipeline.validate();
}

nlohmann::json TrainConfig::to_json() const {
  return {{"gamma", gamma},
          {"lr", lr},
          {"final_epsilon", final_epsilon},
          {"epsilon_timesteps", epsilon_timesteps},
          {"train_steps", train_steps},
          {"seed", seed},
          {"kind", q_kind_name(kind)},
          {"features", feature_mode_name(features)},
          {"max_episode_steps", max_episode_steps},
          {"pipeline",
           {{"sticky_p", pipeline.sticky_p},
            {"skip", pipeline.skip},
            {"stack", pipeline.stack},
            {"clip", pipeline.clip},
            {"height", pipeline.height},
            {"width", pipeline.width},
            {"indicator", pipeline.indicator}}},
          {"eval_every", eval_every},
          {"eval_episodes", eval_episodes},
          {"unused", unused.is_null() ? default_unused() : unused}};
}

TrainConfig TrainConfig::from_json(const nlohmann::json& j) {
  TrainConfig c;
  try {
    c.gamma = j.value("gamma", c.gamma);
    c.lr = j.value("lr", c.lr);
    c.final_epsilon = j.value("final_epsilon", c.final_epsilon);
    c.epsilon_timesteps = j.value("epsilon_timesteps", c.epsilon_timesteps);
    c.train_steps = j.value("train_steps", c.train_steps);
    c.seed = j.value("seed", c.seed);
    if (j.contains("kind")) c.kind = parse_q_kind(j.at("kind").get<std::string>());
    if (j.contains("features")) c.features = parse_feature_mode(j.at("features").get<std::string>());
    c.max_episode_steps = j.value("max_episode_steps", c.max_episode_steps);
    if (j.contains("pipeline")) {
      const auto& p = j.at("pipeline");
      c.pipeline.sticky_p = p.value("sticky_p", c.pipeline.sticky_p);
      c.pipeline.skip = p.value("skip", c.pipeline.skip);
      c.pipeline.stack = p.value("stack", c.pipeline.stack);
      c.pipeline.clip = p.value("clip", c.pipeline.clip);
      c.pipeline.height = p.value("height", c.pipeline.height);
      c.pipeline.width = p.value("width", c.pipeline.width);
      c.pipeline.indicator = p.value("indicator", c.pipeline.indicator);
    }
    c.eval_every = j.value("eval_every", c.eval_every);
    c.eval_episodes = j.value("eval_episodes", c.eval_episodes);
    c.unused = j.value("unused", default_unused());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad train config: ") + e.what());
  }
  return c;
}

TrainResult train_self_play(const std::string& game, ModeId mode, const TrainConfig& config) {
  config.validate();
  auto env = Environment::load(game);
  env.set_mode(mode);
  const int players = env.num_players();
  TrainResult result;
  result.policy = std::make_shared<QPolicy>(config.kind, config.features, env.minimal_action_set());
  QPolicy& q = *result.policy;

  Pipeline pipe(env, config.pipeline, mix_seed(config.seed, 1));
  Rng rng(mix_seed(config.seed, 2));
  std::vector<QFeatures> state(static_cast<std::size_t>(players));
  std::vector<int> chosen(static_cast<std::size_t>(players));
  std::vector<Action> joint(static_cast<std::size_t>(players));

  const auto checkpoint_curve = [&](long long step) {
    if (config.eval_every <= 0) return;
    q.set_epsilon(0.0);
    EvalOptions eval;
    eval.episodes = config.eval_episodes;
    eval.seed = mix_seed(config.seed, 3);
    eval.max_steps = config.max_episode_steps;
    eval.pipeline = config.pipeline;
    eval.pipeline.clip = false;
    result.curve.push_back({step, evaluate_vs_random(q, game, mode, eval)});
  };

  long long step = 0;
  checkpoint_curve(0);
  while (step < config.train_steps) {
    pipe.reset(mix_seed(config.seed, 1000 + static_cast<std::uint64_t>(result.episodes)));
    ++result.episodes;
    for (int p = 0; p < players; ++p) state[static_cast<std::size_t>(p)] = q.observe(pipe, p);
    int length = 0;
    bool done = false;
    while (!done && step < config.train_steps) {
      const double eps = epsilon_at(step, config.final_epsilon, config.epsilon_timesteps);
      for (int p = 0; p < players; ++p) {
        chosen[static_cast<std::size_t>(p)] = q.epsilon_greedy(state[static_cast<std::size_t>(p)], eps, rng);
        joint[static_cast<std::size_t>(p)] = q.actions()[static_cast<std::size_t>(chosen[static_cast<std::size_t>(p)])];
      }
      const auto out = pipe.step(joint);
      ++length;
      ++step;
      done = out.terminal || length >= config.max_episode_steps;
      // Every seat's transition updates the same parameters.
      for (int p = 0; p < players; ++p) {
        auto next = q.observe(pipe, p);
        double target = out.rewards[static_cast<std::size_t>(p)];
        if (!out.terminal) {
          const auto v = q.values(next);
          target += config.gamma * *std::max_element(v.begin(), v.end());
        }
        q.update(state[static_cast<std::size_t>(p)], chosen[static_cast<std::size_t>(p)], target, config.lr);
        state[static_cast<std::size_t>(p)] = std::move(next);
      }
      if (config.eval_every > 0 && step % config.eval_every == 0) checkpoint_curve(step);
    }
  }
  q.set_epsilon(0.0);
  return result;
}

TournamentResult tournament(const std::vector<NamedPolicy>& policies, const std::string& game, ModeId mode,
                            int episodes_per_pair, std::uint64_t seed, int threads) {
  if (policies.size() < 2) throw Error(ErrorCode::kArity, "a tournament needs at least two policies");
  if (episodes_per_pair < 1) throw Error(ErrorCode::kInvalidArgument, "episodes_per_pair must be at least 1");
  auto probe = Environment::load(game);
  probe.set_mode(mode);
  if (probe.num_players() != 2) {
    throw Error(ErrorCode::kUnsupportedMode, "tournaments need a two-player mode; " + probe.name() + " mode " +
                                                 std::to_string(mode.value) + " has " +
                                                 std::to_string(probe.num_players()) + " players");
  }
  TournamentResult out;
  const int n = static_cast<int>(policies.size());
  std::vector<std::vector<double>> per_policy(static_cast<std::size_t>(n));
  int pair_index = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b, ++pair_index) {
      const Policy* pa = policies[static_cast<std::size_t>(a)].policy.get();
      const Policy* pb = policies[static_cast<std::size_t>(b)].policy.get();
      const std::uint64_t pair_seed = mix_seed(seed, static_cast<std::uint64_t>(pair_index));
      // Even slots: a in seat 0; odd slots: a in seat 1.
      const auto samples = parallel_samples(2 * episodes_per_pair, threads, [&](int i) {
        const bool a_first = i % 2 == 0;
        const std::vector<const Policy*> seats = a_first ? std::vector<const Policy*>{pa, pb}
                                                         : std::vector<const Policy*>{pb, pa};
        const auto r = run_episode(game, mode, seats, episode_seed(pair_seed, i));
        return per_step(r, a_first ? 0 : 1);
      });
      PairResult pr{a, b, summarize(samples)};
      pr.report.opponent = policies[static_cast<std::size_t>(b)].name;
      pr.report.seed = pair_seed;
      for (double s : samples) {
        per_policy[static_cast<std::size_t>(a)].push_back(s);
        per_policy[static_cast<std::size_t>(b)].push_back(-s);
      }
      out.pairs.push_back(std::move(pr));
    }
  }
  for (const auto& s : per_policy) out.scores.push_back(summarize(s).mean);
  out.ranking.resize(static_cast<std::size_t>(n));
  std::iota(out.ranking.begin(), out.ranking.end(), 0);
  std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](int x, int y) {
    return out.scores[static_cast<std::size_t>(x)] > out.scores[static_cast<std::size_t>(y)];
  });
  return out;
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& curve) {
  out << "step,mean_reward_per_step,stderr,episodes\n";
  for (const auto& p : curve) {
    out << p.step << ',' << p.report.mean << ',' << p.report.std_err << ',' << p.report.episodes << '\n';
  }
}

std::string report_line(const MetricReport& r) {
  std::ostringstream s;
  s.precision(6);
  s << "mean_reward_per_step=" << r.mean << " stderr=" << r.std_err << " episodes=" << r.episodes
    << " opponent=" << (r.opponent.empty() ? "none" : r.opponent) << " seed=" << r.seed;
  return s.str();
}

}  // namespace maale

#include <chrono>

namespace maale {

BenchResult bench(const std::string& game, std::optional<ModeId> mode, double seconds, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  if (!(seconds > 0.0)) throw Error(ErrorCode::kInvalidArgument, "bench seconds must be positive");
  auto env = Environment::load(game);
  if (mode) env.set_mode(*mode);
  const auto actions = env.minimal_action_set();
  const int players = env.num_players();
  Rng rng(mix_seed(seed, 0));
  std::vector<Action> joint(static_cast<std::size_t>(players));
  const auto random_joint = [&] {
    for (auto& a : joint) a = actions[static_cast<std::size_t>(rng.below(static_cast<int>(actions.size())))];
  };
  const auto budget = std::chrono::duration<double>(seconds / 2.0);
  BenchResult out;

  std::uint64_t episode = 0;
  env.reset(mix_seed(seed, ++episode));
  auto start = Clock::now();
  std::chrono::duration<double> elapsed{};
  while (elapsed < budget) {
    for (int i = 0; i < 256; ++i) {
      if (env.game_over()) env.reset(mix_seed(seed, ++episode));
      random_joint();
      env.act(joint);
      (void)env.screen_rgb();
      ++out.env_steps;
    }
    elapsed = Clock::now() - start;
  }
  out.env_sps = static_cast<double>(out.env_steps) / elapsed.count();

  Pipeline pipe(env, PipelineConfig{}, mix_seed(seed, 1));
  pipe.reset(mix_seed(seed, ++episode));
  start = Clock::now();
  elapsed = {};
  while (elapsed < budget) {
    for (int i = 0; i < 64; ++i) {
      random_joint();
      if (pipe.step(joint).terminal) pipe.reset(mix_seed(seed, ++episode));
      for (int p = 0; p < players; ++p) (void)pipe.observation(p);
      ++out.pipeline_steps;
    }
    elapsed = Clock::now() - start;
  }
  out.pipeline_sps = static_cast<double>(out.pipeline_steps) / elapsed.count();
  return out;
}

}  // namespace maale
