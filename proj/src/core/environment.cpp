#include "maale/core/environment.hpp"

#include <algorithm>

#include "maale/core/error.hpp"

namespace maale {

Environment::Environment(const GameSpec& spec) : spec_(&spec), mode_(spec.default_mode) {}

Environment::~Environment() = default;

Environment Environment::load(std::string_view name) {
  const GameSpec& spec = find_game(name);
  Environment env(spec);
  env.mode_ = default_mode_for(name);
  return env;
}

std::vector<ModeId> Environment::available_modes(std::optional<int> num_players) const {
  std::vector<ModeId> out;
  for (const auto& info : spec_->modes) {
    if (!num_players || info.players == *num_players) out.push_back(info.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Environment::set_mode(ModeId mode) {
  if (spec_->find_mode(mode) == nullptr) {
    std::string valid;
    for (const auto& m : available_modes()) {
      if (!valid.empty()) valid += ", ";
      valid += std::to_string(m.value);
    }
    throw Error(ErrorCode::kInvalidMode, "invalid mode " + std::to_string(mode.value) +
                                             " for game " + spec_->name + " (valid modes: " +
                                             valid + ")");
  }
  mode_ = mode;
}

int Environment::num_players() const { return spec_->find_mode(mode_)->players; }

std::vector<Action> Environment::minimal_action_set() const {
  return spec_->minimal_actions(mode_);
}

void Environment::set_stall_config(const StallConfig& config) {
  if (config.threshold_frames < 1) {
    throw Error(ErrorCode::kInvalidArgument, "stall threshold must be at least 1 frame");
  }
  stall_ = config;
}

void Environment::reset(std::uint64_t seed) {
  const ModeInfo* info = spec_->find_mode(mode_);
  if (!info->supported) {
    throw Error(ErrorCode::kUnsupportedMode, spec_->name + " mode " +
                                                 std::to_string(mode_.value) + " (" +
                                                 info->label + ") has no implemented dynamics");
  }
  rng_.seed(seed);
  game_ = spec_->make(mode_);
  game_->reset(rng_);
  frame_ = 0;
  since_progress_ = 0;
  screen_dirty_ = true;
}

void Environment::require_reset(const char* op) const {
  if (!game_) {
    throw Error(ErrorCode::kModeNotSet,
                std::string(op) + " called before reset on " + spec_->name);
  }
}

RewardVector Environment::act(std::span<const Action> actions) {
  require_reset("act");
  if (game_->terminal()) {
    throw Error(ErrorCode::kGameOver, "act called after game over on " + spec_->name);
  }
  const int players = game_->num_players();
  if (static_cast<int>(actions.size()) != players) {
    throw Error(ErrorCode::kArity, "act expects " + std::to_string(players) +
                                       " actions, got " + std::to_string(actions.size()));
  }
  for (Action a : actions) {
    if (!is_valid_action(to_int(a))) {
      throw Error(ErrorCode::kInvalidArgument,
                  "action " + std::to_string(to_int(a)) + " is out of range");
    }
  }

  StepOutcome out = game_->step(actions, rng_);
  ++frame_;
  screen_dirty_ = true;

  if (spec_->stall_enabled && stall_.enabled) {
    since_progress_ = out.progress ? 0 : since_progress_ + 1;
    if (!game_->terminal() && since_progress_ >= stall_.threshold_frames) {
      const int staller = game_->staller();
      if (staller >= 0) {
        for (int p = 0; p < players; ++p) {
          out.rewards[static_cast<std::size_t>(p)] +=
              p == staller ? stall_.forfeit_reward : -stall_.forfeit_reward;
        }
        game_->end(TerminalCause::kStall);
      }
    }
  }
  return std::move(out.rewards);
}

LivesVector Environment::all_lives() const {
  require_reset("all_lives");
  return game_->lives();
}

bool Environment::game_over() const {
  require_reset("game_over");
  return game_->terminal();
}

TerminalCause Environment::terminal_cause() const {
  require_reset("terminal_cause");
  return game_->terminal_cause();
}

const Screen& Environment::screen_rgb() const {
  require_reset("screen_rgb");
  if (screen_dirty_) {
    game_->render(screen_);
    screen_dirty_ = false;
  }
  return screen_;
}

std::vector<int> Environment::features(int player) const {
  require_reset("features");
  return game_->features(player);
}

}  // namespace maale
