#include <algorithm>
#include <array>
#include <string>

#include "maale/core/action.hpp"
#include "maale/core/error.hpp"
#include "maale/core/screen.hpp"
#include "maale/core/types.hpp"

namespace maale {

namespace {

constexpr std::array<std::string_view, kNumActions> kActionNames{
    "NOOP",      "FIRE",      "UP",          "RIGHT",      "LEFT",          "DOWN",
    "UPRIGHT",   "UPLEFT",    "DOWNRIGHT",   "DOWNLEFT",   "UPFIRE",        "RIGHTFIRE",
    "LEFTFIRE",  "DOWNFIRE",  "UPRIGHTFIRE", "UPLEFTFIRE", "DOWNRIGHTFIRE", "DOWNLEFTFIRE",
};

// 3x5 glyphs, one row per nibble (bit 2 = left column).
constexpr std::array<std::array<std::uint8_t, 5>, 10> kDigits{{
    {7, 5, 5, 5, 7},
    {2, 6, 2, 2, 7},
    {7, 1, 7, 4, 7},
    {7, 1, 7, 1, 7},
    {5, 5, 7, 1, 1},
    {7, 4, 7, 1, 7},
    {7, 4, 7, 5, 7},
    {7, 1, 1, 1, 1},
    {7, 5, 7, 5, 7},
    {7, 5, 7, 1, 7},
}};

}  // namespace

std::optional<Action> action_from_int(int value) {
  if (!is_valid_action(value)) return std::nullopt;
  return static_cast<Action>(value);
}

std::string_view action_name(Action a) { return kActionNames[static_cast<std::size_t>(a)]; }

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kUnknownGame: return "unknown game";
    case ErrorCode::kInvalidMode: return "invalid mode";
    case ErrorCode::kModeNotSet: return "mode not set";
    case ErrorCode::kArity: return "wrong arity";
    case ErrorCode::kGameOver: return "game over";
    case ErrorCode::kUnsupportedMode: return "unsupported mode";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kFormat: return "format error";
  }
  return "error";
}

std::string_view terminal_cause_name(TerminalCause cause) {
  switch (cause) {
    case TerminalCause::kNone: return "none";
    case TerminalCause::kScoreLimit: return "score-limit";
    case TerminalCause::kLives: return "lives";
    case TerminalCause::kTime: return "time";
    case TerminalCause::kStall: return "stall";
  }
  return "none";
}

void Screen::clear(Rgb color) {
  for (std::size_t i = 0; i < data_.size(); i += kChannels) {
    data_[i] = color.r;
    data_[i + 1] = color.g;
    data_[i + 2] = color.b;
  }
}

void Screen::set(int x, int y, Rgb color) {
  if (x < 0 || y < 0 || x >= kWidth || y >= kHeight) return;
  const std::size_t i = index(x, y);
  data_[i] = color.r;
  data_[i + 1] = color.g;
  data_[i + 2] = color.b;
}

void Screen::fill_rect(int x, int y, int w, int h, Rgb color) {
  const int x0 = std::max(x, 0);
  const int y0 = std::max(y, 0);
  const int x1 = std::min(x + w, kWidth);
  const int y1 = std::min(y + h, kHeight);
  for (int yy = y0; yy < y1; ++yy) {
    std::size_t i = index(x0, yy);
    for (int xx = x0; xx < x1; ++xx, i += kChannels) {
      data_[i] = color.r;
      data_[i + 1] = color.g;
      data_[i + 2] = color.b;
    }
  }
}

std::size_t Screen::count(Rgb color) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < data_.size(); i += kChannels) {
    if (data_[i] == color.r && data_[i + 1] == color.g && data_[i + 2] == color.b) ++n;
  }
  return n;
}

int draw_number(Screen& screen, int x, int y, int value, Rgb color, int scale) {
  const std::string text = std::to_string(std::max(value, 0));
  for (char c : text) {
    const auto& glyph = kDigits[static_cast<std::size_t>(c - '0')];
    for (int row = 0; row < 5; ++row) {
      for (int col = 0; col < 3; ++col) {
        if (glyph[static_cast<std::size_t>(row)] & (4 >> col)) {
          screen.fill_rect(x + col * scale, y + row * scale, scale, scale, color);
        }
      }
    }
    x += 4 * scale;
  }
  return x;
}

}  // namespace maale
