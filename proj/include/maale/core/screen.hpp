#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace maale {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr bool operator==(Rgb, Rgb) = default;
};

// 160x210 row-major RGB frame, 8 bits per channel.
class Screen {
 public:
  static constexpr int kWidth = 160;
  static constexpr int kHeight = 210;
  static constexpr int kChannels = 3;
  static constexpr std::size_t kBytes = std::size_t{kWidth} * kHeight * kChannels;

  Screen() : data_(kBytes, 0) {}

  void clear(Rgb color);
  void set(int x, int y, Rgb color);
  // Clipped to the frame.
  void fill_rect(int x, int y, int w, int h, Rgb color);

  Rgb at(int x, int y) const {
    const std::size_t i = index(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }

  std::size_t count(Rgb color) const;

  std::span<const std::uint8_t> bytes() const { return data_; }

  friend bool operator==(const Screen&, const Screen&) = default;

 private:
  static std::size_t index(int x, int y) {
    return (static_cast<std::size_t>(y) * kWidth + static_cast<std::size_t>(x)) * kChannels;
  }

  std::vector<std::uint8_t> data_;
};

// 3x5 block digits, each glyph cell scaled by `scale`. Returns the x just past
// the last glyph.
int draw_number(Screen& screen, int x, int y, int value, Rgb color, int scale = 2);

}  // namespace maale
