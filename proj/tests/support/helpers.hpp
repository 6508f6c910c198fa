#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maale/core/environment.hpp"
#include "maale/core/rng.hpp"
#include "maale/games/catalog.hpp"

namespace testing_support {

struct Trace {
  std::vector<maale::RewardVector> rewards;
  std::vector<maale::LivesVector> lives;
  std::vector<std::vector<std::uint8_t>> screens;
  bool finished = false;
};

// Uniform random joint actions from the minimal set, drawn from `pick`.
inline std::vector<maale::Action> random_joint(const maale::Environment& env, maale::Rng& pick) {
  const auto actions = env.minimal_action_set();
  std::vector<maale::Action> joint(static_cast<std::size_t>(env.num_players()));
  for (auto& a : joint) a = actions[static_cast<std::size_t>(pick.below(static_cast<int>(actions.size())))];
  return joint;
}

inline Trace random_rollout(const std::string& game, maale::ModeId mode, std::uint64_t seed, int frames,
                            bool keep_screens) {
  auto env = maale::Environment::load(game);
  env.set_mode(mode);
  env.reset(seed);
  maale::Rng pick(seed ^ 0xA5A5A5A5ULL);
  Trace t;
  for (int i = 0; i < frames && !env.game_over(); ++i) {
    t.rewards.push_back(env.act(random_joint(env, pick)));
    t.lives.push_back(env.all_lives());
    if (keep_screens) {
      const auto b = env.screen_rgb().bytes();
      t.screens.emplace_back(b.begin(), b.end());
    }
  }
  t.finished = env.game_over();
  return t;
}

// Every (game, mode) with implemented dynamics.
inline std::vector<std::pair<std::string, maale::ModeId>> supported_modes() {
  std::vector<std::pair<std::string, maale::ModeId>> out;
  for (const auto& g : maale::game_catalog()) {
    for (const auto& m : g.modes) {
      if (m.supported) out.emplace_back(g.name, m.id);
    }
  }
  return out;
}

}  // namespace testing_support
