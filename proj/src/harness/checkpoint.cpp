#include "maale/harness/checkpoint.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "maale/core/error.hpp"

namespace maale {

namespace {

constexpr std::array<char, 4> kMagic{'M', 'A', 'Q', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(std::istream& in) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw Error(ErrorCode::kFormat, "truncated checkpoint");
    v |= static_cast<std::uint32_t>(c & 0xFF) << (8 * i);
  }
  return v;
}

}  // namespace

void save_checkpoint(std::ostream& out, const Checkpoint& cp) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kCheckpointVersion);
  const std::string echo =
      nlohmann::json{{"game", cp.game}, {"mode", cp.mode.value}, {"config", cp.config.to_json()}}.dump();
  put_u32(out, static_cast<std::uint32_t>(echo.size()));
  out.write(echo.data(), static_cast<std::streamsize>(echo.size()));
  cp.policy->save_parameters(out);
  if (!out) throw Error(ErrorCode::kIo, "failed to write checkpoint");
}

Checkpoint load_checkpoint(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(ErrorCode::kFormat, "not a policy checkpoint (bad magic)");
  }
  const auto version = get_u32(in);
  if (version != kCheckpointVersion) {
    throw Error(ErrorCode::kFormat, "unsupported checkpoint version " + std::to_string(version));
  }
  const auto len = get_u32(in);
  if (len > (1U << 24)) throw Error(ErrorCode::kFormat, "checkpoint header too large");
  std::string echo(len, '\0');
  if (!in.read(echo.data(), len)) throw Error(ErrorCode::kFormat, "truncated checkpoint header");
  Checkpoint cp;
  try {
    const auto j = nlohmann::json::parse(echo);
    cp.game = j.at("game").get<std::string>();
    cp.mode = ModeId{j.at("mode").get<int>()};
    cp.config = TrainConfig::from_json(j.at("config"));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormat, std::string("bad checkpoint header: ") + e.what());
  }
  cp.policy = std::make_shared<QPolicy>(cp.config.kind, cp.config.features, std::vector<Action>{Action::kNoop});
  cp.policy->load_parameters(in);
  return cp;
}

void save_checkpoint_file(const std::string& path, const Checkpoint& cp) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  save_checkpoint(out, cp);
}

Checkpoint load_checkpoint_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return load_checkpoint(in);
}

}  // namespace maale
