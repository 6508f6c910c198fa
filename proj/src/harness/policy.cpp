#include "maale/harness/policy.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>

#include "maale/core/error.hpp"

namespace maale {

Action RandomPolicy::act(const Pipeline& pipeline, int, Rng& rng) const {
  const auto actions = pipeline.env().minimal_action_set();
  return actions[static_cast<std::size_t>(rng.below(static_cast<int>(actions.size())))];
}

std::shared_ptr<ScriptedPolicy> ScriptedPolicy::constant(Action action) {
  return std::make_shared<ScriptedPolicy>(std::string("constant:") + std::string(action_name(action)),
                                          [action](const Pipeline&, int, Rng&) { return action; });
}

std::string_view q_kind_name(QKind kind) { return kind == QKind::kTabular ? "tabular" : "linear"; }

std::string_view feature_mode_name(FeatureMode mode) {
  return mode == FeatureMode::kRamLikeState ? "ram-like-state" : "downsampled-pixels";
}

QKind parse_q_kind(std::string_view name) {
  if (name == "tabular") return QKind::kTabular;
  if (name == "linear") return QKind::kLinear;
  throw Error(ErrorCode::kInvalidArgument, "unknown policy kind '" + std::string(name) + "' (tabular, linear)");
}

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "ram-like-state") return FeatureMode::kRamLikeState;
  if (name == "downsampled-pixels") return FeatureMode::kDownsampledPixels;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown feature mode '" + std::string(name) + "' (downsampled-pixels, ram-like-state)");
}

QPolicy::QPolicy(QKind kind, FeatureMode features, std::vector<Action> actions)
    : kind_(kind), features_(features), actions_(std::move(actions)) {
  if (actions_.empty()) throw Error(ErrorCode::kInvalidArgument, "policy needs at least one action");
}

namespace {

constexpr int kOneHotSlots = 8;

// Block means of `frame`, quantized to `levels` when levels > 0.
void block_grid(const GrayImage& frame, std::vector<int>& out) {
  for (int by = 0; by + kPixelBlock <= frame.height; by += kPixelBlock) {
    for (int bx = 0; bx + kPixelBlock <= frame.width; bx += kPixelBlock) {
      int sum = 0;
      for (int y = 0; y < kPixelBlock; ++y) {
        for (int x = 0; x < kPixelBlock; ++x) sum += frame.at(by + y, bx + x);
      }
      out.push_back(sum / (kPixelBlock * kPixelBlock));
    }
  }
}

}  // namespace

QFeatures QPolicy::observe(const Pipeline& pipeline, int player) const {
  QFeatures f;
  const int players = pipeline.num_players();
  if (features_ == FeatureMode::kRamLikeState) {
    f.key = pipeline.env().features(player);
    if (kind_ == QKind::kLinear) {
      f.dense.assign(f.key.size() * kOneHotSlots + 1, 0.0F);
      for (std::size_t i = 0; i < f.key.size(); ++i) {
        f.dense[i * kOneHotSlots + static_cast<std::size_t>(std::clamp(f.key[i], 0, kOneHotSlots - 1))] = 1.0F;
      }
      f.dense.back() = 1.0F;
    }
    return f;
  }

  const auto& frames = pipeline.frames().frames();
  std::vector<int> now;
  std::vector<int> before;
  block_grid(frames.back(), now);
  block_grid(frames.size() > 1 ? frames[frames.size() - 2] : frames.back(), before);
  if (kind_ == QKind::kTabular) {
    f.key.reserve(now.size() * 2 + 1);
    for (int v : now) f.key.push_back(v / 64);
    for (std::size_t i = 0; i < now.size(); ++i) f.key.push_back(now[i] == before[i] ? 0 : 1);
    f.key.push_back(player);
    return f;
  }
  f.dense.reserve(now.size() * 2 + static_cast<std::size_t>(players) + 1);
  for (int v : now) f.dense.push_back(static_cast<float>(v) / 255.0F);
  for (std::size_t i = 0; i < now.size(); ++i) f.dense.push_back(static_cast<float>(now[i] - before[i]) / 255.0F);
  for (int p = 0; p < players; ++p) f.dense.push_back(p == player ? 1.0F : 0.0F);
  f.dense.push_back(1.0F);
  return f;
}

double QPolicy::value(const QFeatures& f, int a) const {
  if (kind_ == QKind::kTabular) {
    const auto it = table_.find(f.key);
    return it == table_.end() ? 0.0 : it->second[static_cast<std::size_t>(a)];
  }
  if (weights_.empty()) return 0.0;
  if (static_cast<int>(f.dense.size()) != dim_) throw Error(ErrorCode::kInvalidArgument, "feature size mismatch");
  const float* w = &weights_[static_cast<std::size_t>(a) * dim_];
  double sum = 0.0;
  for (int i = 0; i < dim_; ++i) sum += static_cast<double>(w[i]) * f.dense[static_cast<std::size_t>(i)];
  return sum;
}

std::vector<double> QPolicy::values(const QFeatures& f) const {
  std::vector<double> out(actions_.size());
  for (int a = 0; a < num_actions(); ++a) out[static_cast<std::size_t>(a)] = value(f, a);
  return out;
}

int QPolicy::greedy(const QFeatures& f, Rng& rng) const {
  const auto q = values(f);
  const double best = *std::max_element(q.begin(), q.end());
  const auto ties = std::count(q.begin(), q.end(), best);
  if (ties == static_cast<long>(q.size())) return rng.below(num_actions());
  int pick = -1;
  for (int a = 0; a < num_actions(); ++a) {
    if (q[static_cast<std::size_t>(a)] != best) continue;
    if (pick < 0 || to_int(actions_[static_cast<std::size_t>(a)]) < to_int(actions_[static_cast<std::size_t>(pick)])) pick = a;
  }
  return pick;
}

int QPolicy::epsilon_greedy(const QFeatures& f, double epsilon, Rng& rng) const {
  if (epsilon > 0.0 && rng.chance(epsilon)) return rng.below(num_actions());
  return greedy(f, rng);
}

std::vector<float>& QPolicy::row_for(const QFeatures& f) {
  auto it = table_.find(f.key);
  if (it == table_.end()) it = table_.emplace(f.key, std::vector<float>(actions_.size(), 0.0F)).first;
  return it->second;
}

void QPolicy::update(const QFeatures& f, int a, double target, double lr) {
  if (kind_ == QKind::kTabular) {
    float& q = row_for(f)[static_cast<std::size_t>(a)];
    q = static_cast<float>(q + lr * (target - q));
    return;
  }
  if (weights_.empty()) {
    dim_ = static_cast<int>(f.dense.size());
    weights_.assign(static_cast<std::size_t>(dim_) * actions_.size(), 0.0F);
  }
  const double error = target - value(f, a);
  float* w = &weights_[static_cast<std::size_t>(a) * dim_];
  for (int i = 0; i < dim_; ++i) w[i] = static_cast<float>(w[i] + lr * error * f.dense[static_cast<std::size_t>(i)]);
}

Action QPolicy::act(const Pipeline& pipeline, int player, Rng& rng) const {
  const QFeatures f = observe(pipeline, player);
  return actions_[static_cast<std::size_t>(epsilon_greedy(f, epsilon_, rng))];
}

std::string QPolicy::describe() const {
  return std::string(q_kind_name(kind_)) + "-q/" + std::string(feature_mode_name(features_));
}

namespace {

template <typename T>
void put(std::ostream& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  out.write(b, sizeof(T));
}

template <typename T>
T get(std::istream& in) {
  char b[sizeof(T)];
  if (!in.read(b, sizeof(T))) throw Error(ErrorCode::kFormat, "truncated policy parameters");
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

constexpr std::uint32_t kMaxCount = 1U << 28;

std::uint32_t get_count(std::istream& in) {
  const auto n = get<std::uint32_t>(in);
  if (n > kMaxCount) throw Error(ErrorCode::kFormat, "policy parameter count out of range");
  return n;
}

}  // namespace

// Layout: u8 kind, u8 feature mode, u32 n actions + u8 ids, then either
// u32 entries x (u32 key len, i32 key..., f32 values...) or u32 dim, f32 weights.
void QPolicy::save_parameters(std::ostream& out) const {
  put<std::uint8_t>(out, static_cast<std::uint8_t>(kind_));
  put<std::uint8_t>(out, static_cast<std::uint8_t>(features_));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(actions_.size()));
  for (Action a : actions_) put<std::uint8_t>(out, static_cast<std::uint8_t>(a));
  if (kind_ == QKind::kTabular) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(table_.size()));
    for (const auto& [key, row] : table_) {
      put<std::uint32_t>(out, static_cast<std::uint32_t>(key.size()));
      for (int k : key) put<std::int32_t>(out, k);
      for (float v : row) put<float>(out, v);
    }
  } else {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(dim_));
    for (float w : weights_) put<float>(out, w);
  }
}

void QPolicy::load_parameters(std::istream& in) {
  const auto kind = get<std::uint8_t>(in);
  const auto features = get<std::uint8_t>(in);
  if (kind > 1 || features > 1) throw Error(ErrorCode::kFormat, "unknown policy kind in parameters");
  kind_ = static_cast<QKind>(kind);
  features_ = static_cast<FeatureMode>(features);
  const auto n = get_count(in);
  if (n == 0 || n > static_cast<std::uint32_t>(kNumActions)) throw Error(ErrorCode::kFormat, "bad action count in parameters");
  actions_.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    const int id = get<std::uint8_t>(in);
    if (!is_valid_action(id)) throw Error(ErrorCode::kFormat, "bad action id in parameters");
    actions_.push_back(*action_from_int(id));
  }
  table_.clear();
  weights_.clear();
  dim_ = 0;
  if (kind_ == QKind::kTabular) {
    const auto entries = get_count(in);
    for (std::uint32_t e = 0; e < entries; ++e) {
      std::vector<int> key(get_count(in));
      for (int& k : key) k = get<std::int32_t>(in);
      std::vector<float> row(actions_.size());
      for (float& v : row) v = get<float>(in);
      table_.emplace(std::move(key), std::move(row));
    }
  } else {
    dim_ = static_cast<int>(get_count(in));
    weights_.resize(static_cast<std::size_t>(dim_) * actions_.size());
    for (float& w : weights_) w = get<float>(in);
  }
}

}  // namespace maale
