#pragma once

#include <array>
#include <cstdint>

namespace maale::fx {

// Positions and velocities in 1/256 px.
using Fixed = std::int32_t;

inline constexpr int kFracBits = 8;
inline constexpr Fixed kOne = 1 << kFracBits;

constexpr Fixed from_px(int px) { return px * kOne; }
// Floor to whole pixels.
constexpr int to_px(Fixed f) { return f >> kFracBits; }

// Direction cosines scaled by 4096.
struct Unit {
  int x;
  int y;
};

inline constexpr int kUnitScale = 4096;

// 32 compass directions, 11.25 degrees apart. Index 0 is +x; indices grow
// clockwise on screen (+y is down).
inline constexpr std::array<Unit, 32> kCompass32{{
    {4096, 0},      {4017, 799},    {3784, 1567},   {3406, 2276},   {2896, 2896},
    {2276, 3406},   {1567, 3784},   {799, 4017},    {0, 4096},      {-799, 4017},
    {-1567, 3784},  {-2276, 3406},  {-2896, 2896},  {-3406, 2276},  {-3784, 1567},
    {-4017, 799},   {-4096, 0},     {-4017, -799},  {-3784, -1567}, {-3406, -2276},
    {-2896, -2896}, {-2276, -3406}, {-1567, -3784}, {-799, -4017},  {0, -4096},
    {799, -4017},   {1567, -3784},  {2276, -3406},  {2896, -2896},  {3406, -2276},
    {3784, -1567},  {4017, -799},
}};

// 16 headings, 22.5 degrees apart.
constexpr Unit heading16(int h) { return kCompass32[static_cast<std::size_t>(((h % 16) + 16) % 16 * 2)]; }

constexpr Unit compass32(int d) { return kCompass32[static_cast<std::size_t>(((d % 32) + 32) % 32)]; }

// speed * component / 4096, truncated toward zero so mirrored directions get
// mirrored velocities.
constexpr Fixed scale(Fixed speed, int component) {
  return static_cast<Fixed>((static_cast<std::int64_t>(speed) * component) / kUnitScale);
}

}  // namespace maale::fx
