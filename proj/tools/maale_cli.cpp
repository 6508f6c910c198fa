// Command-line front end over the C interface.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maale/maale.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnknown = 3;

// Thrown on a failed C call; carries the exit code to use.
struct CallFailed {
  int exit_code;
};

void check(maale_status status) {
  if (status == MAALE_OK) return;
  std::cerr << "error: " << maale_last_error() << '\n';
  const bool unknown = status == MAALE_ERR_UNKNOWN_GAME || status == MAALE_ERR_INVALID_MODE ||
                       status == MAALE_ERR_UNSUPPORTED_MODE;
  throw CallFailed{unknown ? kExitUnknown : (status == MAALE_ERR_INVALID_ARGUMENT ? kExitUsage : kExitFailure)};
}

struct EnvDeleter {
  void operator()(maale_env* e) const { maale_env_free(e); }
};
struct PipelineDeleter {
  void operator()(maale_pipeline* p) const { maale_pipeline_free(p); }
};
struct PolicyDeleter {
  void operator()(maale_policy* p) const { maale_policy_free(p); }
};
struct RngDeleter {
  void operator()(maale_rng* r) const { maale_rng_free(r); }
};
using EnvPtr = std::unique_ptr<maale_env, EnvDeleter>;
using PipelinePtr = std::unique_ptr<maale_pipeline, PipelineDeleter>;
using PolicyPtr = std::unique_ptr<maale_policy, PolicyDeleter>;
using RngPtr = std::unique_ptr<maale_rng, RngDeleter>;

nlohmann::json catalog() {
  std::size_t len = 0;
  check(maale_catalog_json(nullptr, 0, &len));
  std::string text(len + 1, '\0');
  check(maale_catalog_json(text.data(), text.size(), &len));
  text.resize(len);
  return nlohmann::json::parse(text);
}

// Loads a game and selects `mode` (or keeps the default when unset).
EnvPtr open_env(const std::string& game, std::optional<int> mode) {
  maale_env* raw = nullptr;
  check(maale_env_load(game.c_str(), &raw));
  EnvPtr env(raw);
  if (mode) check(maale_env_set_mode(env.get(), *mode));
  int selected = 0;
  check(maale_env_mode(env.get(), &selected));
  return env;
}

int env_mode(const maale_env* env) {
  int mode = 0;
  check(maale_env_mode(env, &mode));
  return mode;
}

// "random", "constant:<ACTION>" or a checkpoint path.
PolicyPtr open_policy(const std::string& spec) {
  maale_policy* raw = nullptr;
  if (spec == "random") {
    check(maale_policy_random(&raw));
  } else if (spec.rfind("constant:", 0) == 0) {
    const std::string name = spec.substr(9);
    int id = -1;
    for (int a = 0; a < MAALE_NUM_ACTIONS; ++a) {
      if (name == maale_action_name(a)) id = a;
    }
    if (id < 0) {
      std::cerr << "error: unknown action '" << name << "'\n";
      throw CallFailed{kExitUsage};
    }
    check(maale_policy_constant(id, &raw));
  } else {
    check(maale_policy_load(spec.c_str(), &raw));
  }
  return PolicyPtr(raw);
}

std::string join(const nlohmann::json& modes, const char* sep) {
  std::string out;
  for (const auto& m : modes) {
    if (!out.empty()) out += sep;
    out += std::to_string(m.at("id").get<int>());
  }
  return out;
}

int cmd_list_games(const std::string& format) {
  const auto games = catalog();
  if (format == "json") {
    std::cout << games.dump(2) << '\n';
    return kExitOk;
  }
  if (format == "csv") std::cout << "name,category,players,modes,group\n";
  for (const auto& g : games) {
    const std::string name = g.at("name");
    const std::string theory = g.at("theory");
    const std::string players = g.at("players");
    const std::string group = g.at("category");
    if (format == "csv") {
      std::cout << name << ',' << theory << ',' << players << ',' << join(g.at("modes"), " ") << ',' << group << '\n';
    } else {
      std::cout << name << ", " << theory << ", " << players << ", modes " << join(g.at("modes"), " ") << " ("
                << group << ")\n";
    }
  }
  return kExitOk;
}

int cmd_modes(const std::string& game, std::optional<int> players) {
  auto env = open_env(game, std::nullopt);
  const char* canonical = nullptr;
  check(maale_env_name(env.get(), &canonical));
  std::size_t count = 0;
  check(maale_env_available_modes(env.get(), players.value_or(-1), nullptr, 0, &count));
  std::vector<int> ids(count);
  check(maale_env_available_modes(env.get(), players.value_or(-1), ids.data(), ids.size(), &count));
  nlohmann::json info;
  for (const auto& g : catalog()) {
    if (g.at("name") == canonical) info = g;
  }
  std::cout << "mode,players,label,supported\n";
  for (int id : ids) {
    for (const auto& m : info.at("modes")) {
      if (m.at("id").get<int>() != id) continue;
      std::cout << id << ',' << m.at("players").get<int>() << ',' << m.at("label").get<std::string>() << ','
                << (m.at("supported").get<bool>() ? "yes" : "no") << '\n';
    }
  }
  return kExitOk;
}

void write_pgm(const std::filesystem::path& path, const std::vector<std::uint8_t>& obs, int h, int w, int c,
               int channel) {
  std::ofstream out(path, std::ios::binary);
  out << "P5\n" << w << ' ' << h << "\n255\n";
  for (int i = 0; i < h * w; ++i) out.put(static_cast<char>(obs[static_cast<std::size_t>(i) * c + channel]));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void write_ppm(const std::filesystem::path& path, const std::vector<std::uint8_t>& rgb) {
  std::ofstream out(path, std::ios::binary);
  out << "P6\n" << MAALE_SCREEN_WIDTH << ' ' << MAALE_SCREEN_HEIGHT << "\n255\n";
  out.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string frame_name(int index, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06d.%s", index, ext);
  return buf;
}

int cmd_rollout(const std::string& game, std::optional<int> mode, std::uint64_t seed, int steps,
                const std::string& record, const std::string& policy_spec) {
  auto policy = open_policy(policy_spec);
  auto env = open_env(game, mode);
  int players = 0;
  check(maale_env_num_players(env.get(), &players));
  maale_pipeline_config config;
  maale_pipeline_config_default(&config);
  maale_pipeline* raw_pipe = nullptr;
  check(maale_pipeline_create(env.get(), &config, seed ^ 0x5157ULL, &raw_pipe));
  PipelinePtr pipe(raw_pipe);
  check(maale_pipeline_reset(pipe.get(), seed));
  maale_rng* raw_rng = nullptr;
  check(maale_rng_create(seed + 1, &raw_rng));
  RngPtr rng(raw_rng);

  std::optional<std::ofstream> log;
  std::filesystem::path dir;
  int h = 0, w = 0, c = 0;
  check(maale_pipeline_observation(pipe.get(), 0, nullptr, 0, &h, &w, &c));
  std::vector<std::uint8_t> obs(static_cast<std::size_t>(h) * w * c);
  std::vector<std::uint8_t> rgb(MAALE_SCREEN_BYTES);
  const auto snapshot = [&](int index) {
    if (!log) return;
    check(maale_pipeline_observation(pipe.get(), 0, obs.data(), obs.size(), &h, &w, &c));
    check(maale_env_screen_rgb(env.get(), rgb.data(), rgb.size()));
    write_pgm(dir / frame_name(index, "pgm"), obs, h, w, c, config.stack - 1);
    write_ppm(dir / frame_name(index, "ppm"), rgb);
  };
  if (!record.empty()) {
    dir = record;
    std::filesystem::create_directories(dir);
    log.emplace(dir / "actions.log");
    *log << "step";
    for (int p = 0; p < players; ++p) *log << " action" << p;
    for (int p = 0; p < players; ++p) *log << " reward" << p;
    *log << '\n';
  }
  snapshot(0);

  std::vector<int> actions(static_cast<std::size_t>(players));
  std::vector<double> rewards(static_cast<std::size_t>(players));
  std::vector<double> totals(static_cast<std::size_t>(players), 0.0);
  int terminal = 0;
  int taken = 0;
  while (!terminal && (steps <= 0 || taken < steps)) {
    for (int p = 0; p < players; ++p) check(maale_policy_act(policy.get(), pipe.get(), p, rng.get(), &actions[static_cast<std::size_t>(p)]));
    check(maale_pipeline_step(pipe.get(), actions.data(), actions.size(), rewards.data(), &terminal));
    ++taken;
    for (int p = 0; p < players; ++p) totals[static_cast<std::size_t>(p)] += rewards[static_cast<std::size_t>(p)];
    if (log) {
      *log << taken;
      for (int a : actions) *log << ' ' << maale_action_name(a);
      for (double r : rewards) *log << ' ' << r;
      *log << '\n';
    }
    snapshot(taken);
  }
  int cause = 0;
  check(maale_env_terminal_cause(env.get(), &cause));
  std::cout << "game=" << game << " mode=" << env_mode(env.get()) << " seed=" << seed << " steps=" << taken
            << " terminal=" << terminal << " totals=";
  for (std::size_t p = 0; p < totals.size(); ++p) std::cout << (p ? "," : "") << totals[p];
  std::cout << '\n';
  return kExitOk;
}

void print_metric(const maale_metric& m, const std::string& opponent, std::uint64_t seed) {
  std::cout << "mean_reward_per_step=" << m.mean << " stderr=" << m.std_err << " episodes=" << m.episodes
            << " opponent=" << opponent << " seed=" << seed << '\n';
}

void emit_csv(const std::string& csv, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << csv;
    return;
  }
  std::ofstream out(out_path);
  out << csv;
  if (!out) throw std::runtime_error("cannot write " + out_path);
}

std::string metric_csv(long long step, const maale_metric& m) {
  std::ostringstream s;
  s << "step,mean_reward_per_step,stderr,episodes\n" << step << ',' << m.mean << ',' << m.std_err << ',' << m.episodes << '\n';
  return s.str();
}

struct TrainFlags {
  std::string game;
  std::optional<int> mode;
  maale_train_config config{};
  std::string kind = "tabular";
  std::string features = "ram-like-state";
  std::string checkpoint = "policy.maq";
  std::string out;
  int final_episodes = 20;
  int threads = 1;
};

int cmd_train(TrainFlags& f) {
  auto env = open_env(f.game, f.mode);
  const int mode = env_mode(env.get());
  f.config.kind = f.kind == "linear" ? MAALE_Q_LINEAR : MAALE_Q_TABULAR;
  f.config.features = f.features == "downsampled-pixels" ? MAALE_FEATURES_PIXELS : MAALE_FEATURES_RAM_LIKE;
  maale_policy* raw = nullptr;
  check(maale_train_self_play(f.game.c_str(), mode, &f.config, &raw));
  PolicyPtr policy(raw);
  check(maale_policy_save(policy.get(), f.checkpoint.c_str()));
  std::size_t len = 0;
  check(maale_policy_curve_csv(policy.get(), nullptr, 0, &len));
  std::string csv(len + 1, '\0');
  check(maale_policy_curve_csv(policy.get(), csv.data(), csv.size(), &len));
  csv.resize(len);
  maale_metric m{};
  check(maale_evaluate_vs_random(policy.get(), f.game.c_str(), mode, f.final_episodes, f.config.seed + 1, f.threads, &m));
  if (f.config.eval_every <= 0) csv = metric_csv(f.config.train_steps, m);
  emit_csv(csv, f.out);
  std::cout << "checkpoint=" << f.checkpoint << '\n';
  print_metric(m, "random", f.config.seed + 1);
  return kExitOk;
}

int cmd_eval(const std::string& game, std::optional<int> mode, const std::string& policy_spec, int episodes,
             std::uint64_t seed, int threads, const std::string& out) {
  auto policy = open_policy(policy_spec);
  auto env = open_env(game, mode);
  maale_metric m{};
  check(maale_evaluate_vs_random(policy.get(), game.c_str(), env_mode(env.get()), episodes, seed, threads, &m));
  emit_csv(metric_csv(0, m), out);
  print_metric(m, "random", seed);
  return kExitOk;
}

int cmd_tournament(const std::string& game, std::optional<int> mode, const std::vector<std::string>& specs,
                   int episodes, std::uint64_t seed, int threads) {
  std::vector<PolicyPtr> owned;
  std::vector<const maale_policy*> handles;
  for (const auto& s : specs) {
    owned.push_back(open_policy(s));
    handles.push_back(owned.back().get());
  }
  auto env = open_env(game, mode);
  std::vector<double> scores(handles.size());
  std::vector<int> ranking(handles.size());
  check(maale_tournament(handles.data(), handles.size(), game.c_str(), env_mode(env.get()), episodes, seed, threads,
                         scores.data(), ranking.data()));
  std::cout << "rank,policy,mean_reward_per_step\n";
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    const auto i = static_cast<std::size_t>(ranking[r]);
    std::cout << r + 1 << ',' << specs[i] << ',' << scores[i] << '\n';
  }
  return kExitOk;
}

int cmd_bench(const std::string& game, std::optional<int> mode, double seconds, std::uint64_t seed) {
  auto env = open_env(game, mode);
  double env_sps = 0.0;
  double pipe_sps = 0.0;
  check(maale_bench(game.c_str(), env_mode(env.get()), seconds, seed, &env_sps, &pipe_sps));
  std::cout << "env_sps=" << static_cast<long long>(env_sps) << " pipeline_sps=" << static_cast<long long>(pipe_sps)
            << '\n';
  return kExitOk;
}

// --seed, else MAALE_SEED, else 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv("MAALE_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || *env == '-') {
    std::cerr << "error: MAALE_SEED must be a non-negative integer\n";
    throw CallFailed{kExitUsage};
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent arcade environments"};
  app.require_subcommand(1);

  std::string game;
  std::optional<int> mode;
  std::optional<std::uint64_t> seed;
  std::string format = "table";
  std::optional<int> players;
  int steps = 0;
  std::string record;
  std::string policy_spec = "random";
  int episodes = 100;
  int threads = 1;
  std::string out;
  std::vector<std::string> policies;
  double seconds = 5.0;
  TrainFlags train;
  maale_train_config_default(&train.config);
  long long train_steps = 200000;
  long long eps_steps = 200000;

  const auto add_game = [&](CLI::App* cmd) {
    cmd->add_option("--game", game, "Game name")->required();
    cmd->add_option("--mode", mode, "Mode id (default: the game's default mode)");
  };
  const auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Seed (falls back to MAALE_SEED, then 0)");
  };

  auto* list = app.add_subcommand("list-games", "List games, player counts and modes");
  list->add_option("--format", format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));

  auto* modes = app.add_subcommand("modes", "List a game's modes");
  modes->add_option("--game", game, "Game name")->required();
  modes->add_option("--players", players, "Only modes with this many players")->check(CLI::Range(1, 4));

  auto* rollout = app.add_subcommand("rollout", "Play one episode and optionally record frames");
  add_game(rollout);
  add_seed(rollout);
  rollout->add_option("--steps", steps, "Agent-step cap (0: play to the end)")->check(CLI::NonNegativeNumber);
  rollout->add_option("--record", record, "Directory for frames and the action log");
  rollout->add_option("--policy", policy_spec, "random, constant:<ACTION> or a checkpoint path");

  auto* train_cmd = app.add_subcommand("train", "Self-play Q-learning; writes a checkpoint");
  add_game(train_cmd);
  add_seed(train_cmd);
  train_cmd->add_option("--steps", train_steps, "Training steps")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--gamma", train.config.gamma, "Discount")->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--lr", train.config.lr, "Step size")->check(CLI::PositiveNumber);
  train_cmd->add_option("--final-epsilon", train.config.final_epsilon, "Final exploration rate")->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--epsilon-timesteps", eps_steps, "Exploration decay steps")->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--kind", train.kind, "tabular or linear")->check(CLI::IsMember({"tabular", "linear"}));
  train_cmd->add_option("--features", train.features, "ram-like-state or downsampled-pixels")
      ->check(CLI::IsMember({"ram-like-state", "downsampled-pixels"}));
  train_cmd->add_option("--eval-every", train.config.eval_every, "Learning-curve interval in steps (0: off)")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--eval-episodes", train.config.eval_episodes, "Episodes per curve point")->check(CLI::PositiveNumber);
  train_cmd->add_option("--final-episodes", train.final_episodes, "Episodes for the final report")->check(CLI::PositiveNumber);
  train_cmd->add_option("--checkpoint", train.checkpoint, "Checkpoint path to write");
  train_cmd->add_option("--out", train.out, "CSV output file (default: stdout)");
  train_cmd->add_option("--threads", train.threads, "Evaluation threads")->check(CLI::Range(1, 256));

  auto* eval = app.add_subcommand("eval", "Evaluate a policy in seat 0 against random opponents");
  add_game(eval);
  add_seed(eval);
  eval->add_option("--policy", policy_spec, "random, constant:<ACTION> or a checkpoint path");
  eval->add_option("--episodes", episodes, "Episodes")->check(CLI::PositiveNumber);
  eval->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
  eval->add_option("--out", out, "CSV output file (default: stdout)");

  auto* tour = app.add_subcommand("tournament", "Round robin between policies");
  add_game(tour);
  add_seed(tour);
  tour->add_option("--policy", policies, "Policy (repeat; at least two)")->required();
  tour->add_option("--episodes", episodes, "Episodes per pairing and seat order")->check(CLI::PositiveNumber);
  tour->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));

  auto* bench = app.add_subcommand("bench", "Measure random-play throughput");
  add_game(bench);
  add_seed(bench);
  bench->add_option("--seconds", seconds, "Total measuring time")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*list) return cmd_list_games(format);
    if (*modes) return cmd_modes(game, players);
    if (*tour && policies.size() < 2) {
      std::cerr << "error: a tournament needs at least two --policy flags\n";
      return kExitUsage;
    }
    const std::uint64_t s = resolve_seed(seed);
    if (*rollout) return cmd_rollout(game, mode, s, steps, record, policy_spec);
    if (*train_cmd) {
      train.game = game;
      train.mode = mode;
      train.config.seed = s;
      train.config.train_steps = train_steps;
      train.config.epsilon_timesteps = eps_steps;
      return cmd_train(train);
    }
    if (*eval) return cmd_eval(game, mode, policy_spec, episodes, s, threads, out);
    if (*tour) return cmd_tournament(game, mode, policies, episodes, s, threads);
    if (*bench) return cmd_bench(game, mode, seconds, s);
  } catch (const CallFailed& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
