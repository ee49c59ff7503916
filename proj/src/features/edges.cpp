#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "artfeat/error.hpp"
#include "artfeat/features.hpp"
#include "accumulate.hpp"

namespace artfeat::features {

GrayImage to_grayscale(const RgbImage& img) {
  std::vector<double> values(img.size());
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    const Rgb& p = px[i];
    // 0.3 R + 0.59 G + 0.11 B rewritten around G (the weights sum to one),
    // so (c, c, c) yields c without rounding drift.
    const double gray = p.g + 0.3 * (p.r - p.g) + 0.11 * (p.b - p.g);
    values[i] = std::clamp(gray, 0.0, 1.0);
  }
  return GrayImage(img.width(), img.height(), std::move(values));
}

double sobel_max_magnitude() { return std::sqrt(20.0); }

EdgeMap detect_edges(const GrayImage& gray, const ExtractionConfig& cfg) {
  cfg.validate();
  const std::size_t w = gray.width();
  const std::size_t h = gray.height();
  if (w < 3 || h < 3) throw ImageTooSmall(w, h);

  const double limit = cfg.edge_threshold * sobel_max_magnitude();
  const double limit_sq = limit * limit;
  std::vector<std::uint8_t> bits(w * h, 0);

  for (std::size_t y = 0; y < h; ++y) {
    const std::size_t ym = y == 0 ? 0 : y - 1;
    const std::size_t yp = y + 1 == h ? y : y + 1;
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t xm = x == 0 ? 0 : x - 1;
      const std::size_t xp = x + 1 == w ? x : x + 1;

      const double tl = gray.at(xm, ym), tc = gray.at(x, ym), tr = gray.at(xp, ym);
      const double ml = gray.at(xm, y), mr = gray.at(xp, y);
      const double bl = gray.at(xm, yp), bc = gray.at(x, yp), br = gray.at(xp, yp);

      const double gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
      const double gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
      bits[y * w + x] = (gx * gx + gy * gy) > limit_sq ? 1 : 0;
    }
  }
  return EdgeMap(w, h, std::move(bits));
}

double line_variance(const EdgeMap& edges) {
  const auto bits = edges.bits();
  const double n = static_cast<double>(bits.size());
  detail::CompensatedSum sum;
  for (std::uint8_t b : bits) sum.add(b);
  const double mean = sum.value() / n;
  detail::CompensatedSum ss;
  for (std::uint8_t b : bits) {
    const double d = b - mean;
    ss.add(d * d);
  }
  return ss.value() / n;
}

}  // namespace artfeat::features
