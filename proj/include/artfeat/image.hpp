#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace artfeat {

struct Rgb {
  double r{0.0};
  double g{0.0};
  double b{0.0};
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Row-major raster with channel values in [0,1]. The constructor enforces
// the size and range invariants, so every RgbImage in flight is valid.
class RgbImage {
 public:
  RgbImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels);
  RgbImage(std::size_t width, std::size_t height, Rgb fill);

  // Interleaved 8-bit RGB, values divided by 255.
  static RgbImage from_rgb8(std::size_t width, std::size_t height,
                            std::span<const std::uint8_t> interleaved);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return pixels_.size(); }
  const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  std::span<const Rgb> pixels() const noexcept { return pixels_; }

  // Rotated by 90 degrees clockwise.
  RgbImage rotated90() const;

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Rgb> pixels_;
};

class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height, std::vector<double> values);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  double at(std::size_t x, std::size_t y) const { return values_[y * width_ + x]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<double> values_;
};

class EdgeMap {
 public:
  EdgeMap(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool at(std::size_t x, std::size_t y) const { return bits_[y * width_ + x] != 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t count_set() const noexcept;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bits_;
};

// Per-pixel normalized hue; std::nullopt marks an achromatic pixel.
class HueMap {
 public:
  HueMap(std::size_t width, std::size_t height, std::vector<std::optional<double>> hues);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t size() const noexcept { return hues_.size(); }
  std::span<const std::optional<double>> hues() const noexcept { return hues_; }

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::optional<double>> hues_;
};

}  // namespace artfeat
