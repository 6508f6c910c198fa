#include "maale/preprocessing/pipeline.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>

#include "maale/core/error.hpp"

namespace maale {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                              static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw Error(ErrorCode::kFormat, "truncated tensor header");
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

}  // namespace

void write_obs_binary(std::ostream& out, const ObsTensor& obs) {
  put_u32(out, static_cast<std::uint32_t>(obs.height));
  put_u32(out, static_cast<std::uint32_t>(obs.width));
  put_u32(out, static_cast<std::uint32_t>(obs.channels));
  out.write(reinterpret_cast<const char*>(obs.data.data()), static_cast<std::streamsize>(obs.data.size()));
}

ObsTensor read_obs_binary(std::istream& in) {
  ObsTensor obs;
  obs.height = static_cast<int>(get_u32(in));
  obs.width = static_cast<int>(get_u32(in));
  obs.channels = static_cast<int>(get_u32(in));
  if (obs.height > 4096 || obs.width > 4096 || obs.channels > 4096) {
    throw Error(ErrorCode::kFormat, "tensor dimensions out of range");
  }
  obs.data.resize(static_cast<std::size_t>(obs.height) * obs.width * obs.channels);
  if (!in.read(reinterpret_cast<char*>(obs.data.data()), static_cast<std::streamsize>(obs.data.size()))) {
    throw Error(ErrorCode::kFormat, "truncated tensor data");
  }
  return obs;
}

Action sticky(Action action, Action prev, double p, Rng& rng) {
  return rng.chance(p) ? prev : action;
}

double clip_reward(double r) { return std::clamp(r, -1.0, 1.0); }

FrameStack::FrameStack(int depth) : depth_(depth) {
  if (depth < 1) throw Error(ErrorCode::kInvalidArgument, "frame stack depth must be at least 1");
}

void FrameStack::reset(const GrayImage& first) {
  frames_.assign(static_cast<std::size_t>(depth_), first);
}

void FrameStack::push(GrayImage frame) {
  frames_.push_back(std::move(frame));
  while (static_cast<int>(frames_.size()) > depth_) frames_.pop_front();
}

ObsTensor stack_tensor(const FrameStack& stack) { return agent_indicator(stack, -1, 0); }

ObsTensor agent_indicator(const FrameStack& stack, int player, int num_players) {
  if (num_players > 0 && (player < 0 || player >= num_players)) {
    throw Error(ErrorCode::kInvalidArgument, "player index out of range");
  }
  const auto& frames = stack.frames();
  ObsTensor obs;
  obs.height = frames.front().height;
  obs.width = frames.front().width;
  const int depth = static_cast<int>(frames.size());
  obs.channels = depth + num_players;
  obs.data.assign(static_cast<std::size_t>(obs.height) * obs.width * obs.channels, 0);
  const std::size_t pixels = static_cast<std::size_t>(obs.height) * obs.width;
  for (std::size_t i = 0; i < pixels; ++i) {
    std::uint8_t* px = &obs.data[i * obs.channels];
    for (int c = 0; c < depth; ++c) px[c] = frames[static_cast<std::size_t>(c)].pixels[i];
    if (num_players > 0) px[depth + player] = 255;
  }
  return obs;
}

void PipelineConfig::validate() const {
  if (!(sticky_p >= 0.0 && sticky_p < 1.0)) throw Error(ErrorCode::kInvalidArgument, "sticky_p must be in [0, 1)");
  if (skip < 1) throw Error(ErrorCode::kInvalidArgument, "skip must be at least 1");
  if (stack < 1) throw Error(ErrorCode::kInvalidArgument, "stack must be at least 1");
  if (height < 1 || width < 1) throw Error(ErrorCode::kInvalidArgument, "resize target must be positive");
}

Pipeline::Pipeline(Environment& env, PipelineConfig config, std::uint64_t sticky_seed)
    : env_(&env), config_(config), rng_(sticky_seed), stack_(std::max(config.stack, 1)) {
  config_.validate();
}

GrayImage Pipeline::process() const {
  return resize_area(to_grayscale(env_->screen_rgb()), config_.height, config_.width);
}

void Pipeline::reset(std::uint64_t env_seed) {
  env_->reset(env_seed);
  prev_.assign(static_cast<std::size_t>(env_->num_players()), Action::kNoop);
  stack_.reset(process());
}

Pipeline::Step Pipeline::step(std::span<const Action> actions) {
  if (static_cast<int>(actions.size()) != env_->num_players()) {
    throw Error(ErrorCode::kArity, "expected " + std::to_string(env_->num_players()) + " actions, got " +
                                       std::to_string(actions.size()));
  }
  std::vector<Action> joint(actions.size());
  const FrameSkipResult fs = frame_skip(
      [&](int) {
        for (std::size_t p = 0; p < actions.size(); ++p) {
          joint[p] = sticky(actions[p], prev_[p], config_.sticky_p, rng_);
        }
        prev_ = joint;
        return env_->act(joint);
      },
      [&] { return env_->game_over(); }, config_.skip);
  stack_.push(process());

  Step out;
  out.raw_rewards = fs.rewards;
  out.frames = fs.frames;
  out.terminal = fs.terminal;
  out.rewards.reserve(fs.rewards.size());
  for (int r : fs.rewards) out.rewards.push_back(config_.clip ? clip_reward(r) : static_cast<double>(r));
  return out;
}

int Pipeline::channels() const { return config_.stack + (config_.indicator ? env_->num_players() : 0); }

ObsTensor Pipeline::observation(int player) const {
  return config_.indicator ? agent_indicator(stack_, player, env_->num_players()) : stack_tensor(stack_);
}

}  // namespace maale
