#include "artfeat/features.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "artfeat/error.hpp"
#include "artfeat/hash.hpp"

namespace artfeat::features {

std::string_view to_string(HueMode mode) {
  return mode == HueMode::Standard ? "standard" : "paper_literal";
}

HueMode parse_hue_mode(std::string_view text) {
  if (text == "standard") return HueMode::Standard;
  if (text == "paper_literal") return HueMode::PaperLiteral;
  throw DomainError("unknown hue mode '" + std::string(text) +
                    "' (expected standard or paper_literal)");
}

void ExtractionConfig::validate() const {
  if (!(edge_threshold > 0.0 && edge_threshold < 1.0)) {
    throw DomainError("edge_threshold must lie strictly between 0 and 1");
  }
  if (resize_max_side && *resize_max_side < 8) {
    throw DomainError("resize_max_side must be at least 8 when enabled");
  }
  if (!(hue_scale > 0.0) || !std::isfinite(hue_scale)) {
    throw DomainError("hue_scale must be a positive finite number");
  }
}

std::string ExtractionConfig::canonical() const {
  // Hex-float keeps the text exact, so equal configs hash equally.
  char buf[256];
  std::snprintf(buf, sizeof buf, "resize_max_side=%s;edge_threshold=%a;hue_mode=%s;hue_scale=%a",
                resize_max_side ? std::to_string(*resize_max_side).c_str() : "off",
                edge_threshold, std::string(to_string(hue_mode)).c_str(), hue_scale);
  return buf;
}

std::string ExtractionConfig::hash() const { return sha256_hex(canonical()).substr(0, 16); }

FeatureVector extract_features(const RgbImage& img, const ExtractionConfig& cfg) {
  cfg.validate();
  const RgbImage work = cfg.resize_max_side ? downsample_area(img, *cfg.resize_max_side) : img;

  const EdgeMap edges = detect_edges(to_grayscale(work), cfg);
  const ColorVariance color = color_variance(hue_map(work, cfg));

  FeatureVector out;
  out.line_variance = line_variance(edges);
  out.color_variance = color.variance;
  out.defined_hue_fraction = color.defined_fraction;
  out.extraction_config_hash = cfg.hash();
  return out;
}

}  // namespace artfeat::features
