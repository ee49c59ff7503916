#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "accumulate.hpp"
#include "artfeat/error.hpp"
#include "artfeat/features.hpp"

namespace artfeat::features {

std::optional<double> hue_value(double r, double g, double b, HueMode mode, double hue_scale) {
  auto check = [](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw DomainError(std::string("hue_value: channel ") + name + " = " + std::to_string(v) +
                        " outside [0,1]");
    }
  };
  check(r, "R");
  check(g, "G");
  check(b, "B");

  const double hi = std::max({r, g, b});
  const double lo = std::min({r, g, b});
  if (hi == lo) return std::nullopt;
  const double span = hi - lo;

  // Work in sixths of a turn (60 degree sectors) so the primaries land on
  // exact binary fractions: 2/6 == 1/3 and 4/6 == 2/3 in double.
  double sixths = 0.0;
  if (hi == r) {
    sixths = (g >= b ? 0.0 : 6.0) + (g - b) / span;
  } else if (hi == g) {
    sixths = 2.0 + (b - r) / span;
  } else if (mode == HueMode::Standard) {
    sixths = 4.0 + (r - g) / span;
  } else {
    sixths = 2.0 + (b - r) / span;
  }

  const double scaled = (sixths / 6.0) * (360.0 * hue_scale);
  double h = scaled - std::floor(scaled);
  if (h >= 1.0) h = 0.0;
  return h;
}

HueMap hue_map(const RgbImage& img, const ExtractionConfig& cfg) {
  std::vector<std::optional<double>> hues(img.size());
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    hues[i] = hue_value(px[i].r, px[i].g, px[i].b, cfg.hue_mode, cfg.hue_scale);
  }
  return HueMap(img.width(), img.height(), std::move(hues));
}

ColorVariance color_variance(const HueMap& hues) {
  std::vector<double> defined;
  defined.reserve(hues.size());
  for (const auto& h : hues.hues()) {
    if (h) defined.push_back(*h);
  }
  if (defined.empty()) throw NoChromaticPixels();

  // Summing in ascending order makes the result a function of the hue
  // multiset alone, independent of pixel layout.
  std::sort(defined.begin(), defined.end());

  const double n = static_cast<double>(defined.size());
  detail::CompensatedSum sum;
  for (double h : defined) sum.add(h);
  const double mean = sum.value() / n;
  detail::CompensatedSum ss;
  for (double h : defined) {
    const double d = h - mean;
    ss.add(d * d);
  }
  return {ss.value() / n, n / static_cast<double>(hues.size())};
}

}  // namespace artfeat::features
