#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "maale/core/action.hpp"
#include "maale/core/rng.hpp"
#include "maale/preprocessing/pipeline.hpp"

namespace maale {

// Chooses one seat's action from the pipeline state. Policies are immutable
// while acting, so one instance can serve several seats and threads; all
// randomness comes from the caller's rng.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const Pipeline& pipeline, int player, Rng& rng) const = 0;
  virtual std::string describe() const = 0;
};

// Uniform over the environment's minimal action set.
class RandomPolicy final : public Policy {
 public:
  Action act(const Pipeline& pipeline, int player, Rng& rng) const override;
  std::string describe() const override { return "random"; }
};

class ScriptedPolicy final : public Policy {
 public:
  using Script = std::function<Action(const Pipeline&, int, Rng&)>;

  ScriptedPolicy(std::string name, Script script) : name_(std::move(name)), script_(std::move(script)) {}
  static std::shared_ptr<ScriptedPolicy> constant(Action action);

  Action act(const Pipeline& pipeline, int player, Rng& rng) const override { return script_(pipeline, player, rng); }
  std::string describe() const override { return name_; }

 private:
  std::string name_;
  Script script_;
};

enum class QKind { kTabular, kLinear };
enum class FeatureMode { kDownsampledPixels, kRamLikeState };

std::string_view q_kind_name(QKind kind);
std::string_view feature_mode_name(FeatureMode mode);
// Throws Error{kInvalidArgument}.
QKind parse_q_kind(std::string_view name);
FeatureMode parse_feature_mode(std::string_view name);

// Observation summary the value function reads. Tabular policies key on the
// discrete features; linear policies use the dense ones.
struct QFeatures {
  std::vector<int> key;
  std::vector<float> dense;
};

// Coarse pixel grid: the newest processed frame averaged over blocks of this
// size, plus the same grid of the change from the previous frame.
inline constexpr int kPixelBlock = 4;

// Action-value function shared by every seat. Seat identity enters only
// through the observation (indicator channel or egocentric features).
class QPolicy final : public Policy {
 public:
  QPolicy(QKind kind, FeatureMode features, std::vector<Action> actions);

  QKind kind() const { return kind_; }
  FeatureMode feature_mode() const { return features_; }
  const std::vector<Action>& actions() const { return actions_; }
  int num_actions() const { return static_cast<int>(actions_.size()); }

  // Exploration rate used by act(); 0 means greedy.
  double epsilon() const { return epsilon_; }
  void set_epsilon(double e) { epsilon_ = e; }

  QFeatures observe(const Pipeline& pipeline, int player) const;
  double value(const QFeatures& f, int action_index) const;
  std::vector<double> values(const QFeatures& f) const;
  // Greedy index. When every action ties the choice is uniform (so an
  // untrained policy plays like a random one); partial ties go to the
  // lowest action id.
  int greedy(const QFeatures& f, Rng& rng) const;
  int epsilon_greedy(const QFeatures& f, double epsilon, Rng& rng) const;
  void update(const QFeatures& f, int action_index, double target, double lr);

  Action act(const Pipeline& pipeline, int player, Rng& rng) const override;
  std::string describe() const override;

  // Parameter payload (no header); see checkpoint.hpp for the file format.
  void save_parameters(std::ostream& out) const;
  void load_parameters(std::istream& in);
  std::size_t table_size() const { return table_.size(); }
  const std::vector<float>& weights() const { return weights_; }

  friend bool operator==(const QPolicy& a, const QPolicy& b) {
    return a.kind_ == b.kind_ && a.features_ == b.features_ && a.actions_ == b.actions_ &&
           a.table_ == b.table_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<float>& row_for(const QFeatures& f);

  QKind kind_;
  FeatureMode features_;
  std::vector<Action> actions_;
  double epsilon_ = 0.0;
  std::map<std::vector<int>, std::vector<float>> table_;
  // Linear weights, action-major: weights_[a * dim + i]. Sized lazily from
  // the first observation.
  std::vector<float> weights_;
  int dim_ = 0;
};

}  // namespace maale
