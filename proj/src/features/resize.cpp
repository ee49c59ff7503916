#include <algorithm>
#include <cstddef>
#include <vector>

#include "artfeat/error.hpp"
#include "artfeat/features.hpp"

namespace artfeat::features {

namespace {

struct Tap {
  std::size_t src;
  double weight;
};

// Box-filter taps for shrinking `in` samples to `out` samples. Overlaps are
// computed in integer units of 1/(in*out) so the weights are exact ratios.
std::vector<std::vector<Tap>> area_taps(std::size_t in, std::size_t out) {
  std::vector<std::vector<Tap>> taps(out);
  const double norm = static_cast<double>(in);
  for (std::size_t o = 0; o < out; ++o) {
    const std::size_t lo = o * in;
    const std::size_t hi = (o + 1) * in;
    for (std::size_t i = lo / out; i < in && i * out < hi; ++i) {
      const std::size_t s_lo = std::max(lo, i * out);
      const std::size_t s_hi = std::min(hi, (i + 1) * out);
      if (s_hi > s_lo) taps[o].push_back({i, static_cast<double>(s_hi - s_lo) / norm});
    }
  }
  return taps;
}

Rgb blend(const std::vector<Tap>& taps, auto&& sample) {
  Rgb acc{};
  for (const Tap& t : taps) {
    const Rgb& p = sample(t.src);
    acc.r += t.weight * p.r;
    acc.g += t.weight * p.g;
    acc.b += t.weight * p.b;
  }
  acc.r = std::clamp(acc.r, 0.0, 1.0);
  acc.g = std::clamp(acc.g, 0.0, 1.0);
  acc.b = std::clamp(acc.b, 0.0, 1.0);
  return acc;
}

}  // namespace

RgbImage downsample_area(const RgbImage& img, std::size_t max_side) {
  if (max_side < 1) throw DomainError("downsample_area: max_side must be positive");
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const std::size_t longest = std::max(w, h);
  if (longest <= max_side) return img;

  auto scaled = [&](std::size_t side) {
    return std::max<std::size_t>(1, (side * max_side + longest / 2) / longest);
  };
  const std::size_t nw = w == longest ? max_side : scaled(w);
  const std::size_t nh = h == longest ? max_side : scaled(h);

  const auto xtaps = area_taps(w, nw);
  const auto ytaps = area_taps(h, nh);

  std::vector<Rgb> tmp(nw * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < nw; ++x) {
      tmp[y * nw + x] = blend(xtaps[x], [&](std::size_t s) -> const Rgb& { return img.at(s, y); });
    }
  }
  std::vector<Rgb> out(nw * nh);
  for (std::size_t y = 0; y < nh; ++y) {
    for (std::size_t x = 0; x < nw; ++x) {
      out[y * nw + x] =
          blend(ytaps[y], [&](std::size_t s) -> const Rgb& { return tmp[s * nw + x]; });
    }
  }
  return RgbImage(nw, nh, std::move(out));
}

}  // namespace artfeat::features
