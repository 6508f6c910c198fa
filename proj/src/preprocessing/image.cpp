#include "maale/preprocessing/image.hpp"

#include "maale/core/error.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>

namespace maale {

std::uint8_t luma(Rgb c) {
  const int weighted = 299 * c.r + 587 * c.g + 114 * c.b;
  return static_cast<std::uint8_t>((weighted + 500) / 1000);
}

GrayImage to_grayscale(const Screen& screen) {
  GrayImage out(Screen::kHeight, Screen::kWidth);
  const auto bytes = screen.bytes();
  for (std::size_t i = 0; i < out.pixels.size(); ++i) {
    out.pixels[i] = luma({bytes[3 * i], bytes[3 * i + 1], bytes[3 * i + 2]});
  }
  return out;
}

namespace {

struct Tap {
  int source;
  std::int64_t weight;
};

// Overlaps along one axis, measured in units of 1/(in*out) of the source
// length so every boundary lands on an integer.
std::vector<std::vector<Tap>> axis_taps(int in, int out) {
  std::vector<std::vector<Tap>> taps(static_cast<std::size_t>(out));
  for (int o = 0; o < out; ++o) {
    const std::int64_t lo = static_cast<std::int64_t>(o) * in;
    const std::int64_t hi = lo + in;
    for (int s = static_cast<int>(lo / out); s < in && static_cast<std::int64_t>(s) * out < hi; ++s) {
      const std::int64_t a = std::max<std::int64_t>(lo, static_cast<std::int64_t>(s) * out);
      const std::int64_t b = std::min<std::int64_t>(hi, static_cast<std::int64_t>(s + 1) * out);
      if (b > a) taps[static_cast<std::size_t>(o)].push_back({s, b - a});
    }
  }
  return taps;
}

}  // namespace

GrayImage resize_area(const GrayImage& image, int out_height, int out_width) {
  if (image.height < 1 || image.width < 1 || out_height < 1 || out_width < 1) {
    throw Error(ErrorCode::kInvalidArgument, "resize_area needs non-empty input and output sizes");
  }
  const auto rows = axis_taps(image.height, out_height);
  const auto cols = axis_taps(image.width, out_width);
  // Total weight per output pixel: in_h * in_w.
  const std::int64_t den = static_cast<std::int64_t>(image.height) * image.width;
  GrayImage out(out_height, out_width);
  std::vector<std::int64_t> row_sums(static_cast<std::size_t>(image.width));
  for (int oy = 0; oy < out_height; ++oy) {
    std::fill(row_sums.begin(), row_sums.end(), 0);
    for (const Tap& ty : rows[static_cast<std::size_t>(oy)]) {
      const std::uint8_t* src = &image.pixels[static_cast<std::size_t>(ty.source) * image.width];
      for (int x = 0; x < image.width; ++x) row_sums[static_cast<std::size_t>(x)] += ty.weight * src[x];
    }
    for (int ox = 0; ox < out_width; ++ox) {
      std::int64_t sum = 0;
      for (const Tap& tx : cols[static_cast<std::size_t>(ox)]) sum += tx.weight * row_sums[static_cast<std::size_t>(tx.source)];
      out.at(oy, ox) = static_cast<std::uint8_t>((2 * sum + den) / (2 * den));
    }
  }
  return out;
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
}

void write_ppm(std::ostream& out, const Screen& screen) {
  out << "P6\n" << Screen::kWidth << ' ' << Screen::kHeight << "\n255\n";
  const auto bytes = screen.bytes();
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace maale
