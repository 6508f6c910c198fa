#pragma once

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <vector>

#include "maale/core/action.hpp"
#include "maale/core/environment.hpp"
#include "maale/core/rng.hpp"
#include "maale/preprocessing/image.hpp"

namespace maale {

// Height x width x channels, channel-last.
struct ObsTensor {
  int height = 0;
  int width = 0;
  int channels = 0;
  std::vector<std::uint8_t> data;

  std::uint8_t at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  friend bool operator==(const ObsTensor&, const ObsTensor&) = default;
};

// Header of three little-endian uint32 (height, width, channels), then data.
void write_obs_binary(std::ostream& out, const ObsTensor& obs);
ObsTensor read_obs_binary(std::istream& in);

// Returns prev with probability p, else action. Draws exactly one uniform.
Action sticky(Action action, Action prev, double p, Rng& rng);

double clip_reward(double r);

struct FrameSkipResult {
  RewardVector rewards;
  int frames = 0;
  bool terminal = false;
};

// Calls step(frame_index) up to `skip` times, where step returns the frame's
// reward vector, stopping early once terminal() reports true.
template <typename StepFn, typename TerminalFn>
FrameSkipResult frame_skip(StepFn&& step, TerminalFn&& terminal, int skip) {
  FrameSkipResult out;
  for (int i = 0; i < skip; ++i) {
    const RewardVector r = step(i);
    if (out.rewards.empty()) out.rewards.assign(r.size(), 0);
    for (std::size_t p = 0; p < r.size(); ++p) out.rewards[p] += r[p];
    ++out.frames;
    if (terminal()) {
      out.terminal = true;
      break;
    }
  }
  return out;
}

// Sliding window over the last `depth` processed frames, oldest first.
class FrameStack {
 public:
  explicit FrameStack(int depth);

  int depth() const { return depth_; }
  // Seeds the window with `depth` copies of the first frame.
  void reset(const GrayImage& first);
  void push(GrayImage frame);
  const std::deque<GrayImage>& frames() const { return frames_; }
  const GrayImage& newest() const { return frames_.back(); }

 private:
  int depth_;
  std::deque<GrayImage> frames_;
};

// Stacked frames followed by one constant channel per player; channel
// stack.depth() + player is 255, the other indicator channels are 0.
ObsTensor agent_indicator(const FrameStack& stack, int player, int num_players);
// Stacked frames only.
ObsTensor stack_tensor(const FrameStack& stack);

struct PipelineConfig {
  double sticky_p = 0.25;
  int skip = 4;
  int stack = 4;
  bool clip = false;
  int height = 84;
  int width = 84;
  bool indicator = true;

  // Throws Error{kInvalidArgument}.
  void validate() const;
};

// The observation and reward pipeline around one environment. The frame
// stack is shared by all seats since they watch the same screen; seats
// differ only in their indicator channel.
class Pipeline {
 public:
  struct Step {
    std::vector<double> rewards;  // clipped when config.clip
    RewardVector raw_rewards;
    int frames = 0;
    bool terminal = false;
  };

  Pipeline(Environment& env, PipelineConfig config, std::uint64_t sticky_seed);

  const PipelineConfig& config() const { return config_; }
  Environment& env() { return *env_; }
  const Environment& env() const { return *env_; }
  int num_players() const { return env_->num_players(); }

  void reset(std::uint64_t env_seed);
  Step step(std::span<const Action> actions);

  ObsTensor observation(int player) const;
  int channels() const;
  const FrameStack& frames() const { return stack_; }
  // Actions the emulator actually executed on the last frame.
  const std::vector<Action>& executed() const { return prev_; }

 private:
  GrayImage process() const;

  Environment* env_;
  PipelineConfig config_;
  Rng rng_;
  FrameStack stack_;
  std::vector<Action> prev_;
};

}  // namespace maale
