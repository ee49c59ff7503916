#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "artfeat/image.hpp"

namespace artfeat::features {

// How the max = B branch of the RGB -> hue mapping is evaluated.
//   standard      : 60 * (R - G) / (max - min) + 240 degrees (blue lands on 240)
//   paper_literal : 60 * (B - R) / (max - min) + 120 degrees, the formula as printed
enum class HueMode { Standard, PaperLiteral };

std::string_view to_string(HueMode mode);
HueMode parse_hue_mode(std::string_view text);

struct ExtractionConfig {
  // Longest side after area-average downsampling; std::nullopt disables it.
  std::optional<std::size_t> resize_max_side{512};
  // Normalized Sobel magnitude must exceed this to mark an edge.
  double edge_threshold{0.25};
  HueMode hue_mode{HueMode::Standard};
  // Multiplier from degrees to the normalized hue scale.
  double hue_scale{1.0 / 360.0};

  // Throws DomainError when a field is outside its allowed range.
  void validate() const;
  // Stable identifier covering every field; 16 lowercase hex digits.
  std::string hash() const;
  // Canonical text used for hashing and manifests.
  std::string canonical() const;
};

struct FeatureVector {
  double line_variance{0.0};
  double color_variance{0.0};
  double defined_hue_fraction{0.0};
  std::string extraction_config_hash;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct ColorVariance {
  double variance{0.0};
  double defined_fraction{0.0};
};

/// Luma-style weighting 0.3 R + 0.59 G + 0.11 B. Gray inputs map to
/// themselves exactly.
GrayImage to_grayscale(const RgbImage& img);

/// Area-average downsample so that max(width, height) == max_side. Images
/// already within the bound are returned unchanged (no upsampling).
RgbImage downsample_area(const RgbImage& img, std::size_t max_side);

/// Theoretical maximum of the 3x3 Sobel gradient magnitude for inputs in
/// [0,1]: sqrt(4^2 + 2^2).
double sobel_max_magnitude();

/// Binary edge map: 1 where the Sobel gradient magnitude divided by
/// sobel_max_magnitude() is strictly greater than cfg.edge_threshold.
/// Samples outside the image are clamped to the nearest border pixel.
/// Throws ImageTooSmall when either side is below 3.
EdgeMap detect_edges(const GrayImage& gray, const ExtractionConfig& cfg);

/// Population variance of the bits (divide by N).
double line_variance(const EdgeMap& edges);

/// Normalized hue in [0,1), or std::nullopt when max == min.
/// Throws DomainError for channels outside [0,1].
std::optional<double> hue_value(double r, double g, double b, HueMode mode,
                                double hue_scale = 1.0 / 360.0);

HueMap hue_map(const RgbImage& img, const ExtractionConfig& cfg);

/// Population variance over defined hues only. Throws NoChromaticPixels if
/// there are none. The result does not depend on pixel order.
ColorVariance color_variance(const HueMap& hues);

/// Full pipeline: optional downsample, then grayscale -> edges -> line
/// variance and hue -> color variance. Deterministic in (img, cfg).
FeatureVector extract_features(const RgbImage& img, const ExtractionConfig& cfg);

}  // namespace artfeat::features
