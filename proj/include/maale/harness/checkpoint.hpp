#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "maale/harness/harness.hpp"
#include "maale/harness/policy.hpp"

namespace maale {

// Checkpoint layout, little-endian:
//   "MAQ1"  u32 version  u32 len  config JSON (game, mode, train config)
//   policy parameters (QPolicy::save_parameters)
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  std::string game;
  ModeId mode{0};
  TrainConfig config;
  std::shared_ptr<QPolicy> policy;
};

void save_checkpoint(std::ostream& out, const Checkpoint& checkpoint);
Checkpoint load_checkpoint(std::istream& in);
void save_checkpoint_file(const std::string& path, const Checkpoint& checkpoint);
Checkpoint load_checkpoint_file(const std::string& path);

}  // namespace maale
