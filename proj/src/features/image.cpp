#include "artfeat/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "artfeat/error.hpp"

namespace artfeat {

namespace {

void check_dims(std::size_t width, std::size_t height, std::size_t count, const char* what) {
  if (width < 1 || height < 1) {
    throw DomainError(std::string(what) + ": width and height must be at least 1");
  }
  if (count != width * height) {
    throw DomainError(std::string(what) + ": expected " + std::to_string(width * height) +
                      " values, got " + std::to_string(count));
  }
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width_, height_, pixels_.size(), "RgbImage");
  for (std::size_t i = 0; i < pixels_.size(); ++i) {
    const Rgb& p = pixels_[i];
    if (!in_unit(p.r) || !in_unit(p.g) || !in_unit(p.b)) {
      throw DomainError("RgbImage: pixel " + std::to_string(i) + " has a channel outside [0,1]");
    }
  }
}

RgbImage::RgbImage(std::size_t width, std::size_t height, Rgb fill)
    : RgbImage(width, height, std::vector<Rgb>(width * height, fill)) {}

RgbImage RgbImage::from_rgb8(std::size_t width, std::size_t height,
                             std::span<const std::uint8_t> interleaved) {
  if (interleaved.size() != width * height * 3) {
    throw DomainError("RgbImage::from_rgb8: buffer size does not match dimensions");
  }
  std::vector<Rgb> px(width * height);
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = {interleaved[3 * i] / 255.0, interleaved[3 * i + 1] / 255.0,
             interleaved[3 * i + 2] / 255.0};
  }
  return RgbImage(width, height, std::move(px));
}

RgbImage RgbImage::rotated90() const {
  // Output is height_ wide and width_ tall; out(x', y') = in(y', H-1-x').
  std::vector<Rgb> out(pixels_.size());
  const std::size_t ow = height_;
  for (std::size_t y = 0; y < height_; ++y) {
    for (std::size_t x = 0; x < width_; ++x) {
      const std::size_t nx = height_ - 1 - y;
      const std::size_t ny = x;
      out[ny * ow + nx] = at(x, y);
    }
  }
  return RgbImage(height_, width_, std::move(out));
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width_, height_, values_.size(), "GrayImage");
  if (!std::all_of(values_.begin(), values_.end(), in_unit)) {
    throw DomainError("GrayImage: value outside [0,1]");
  }
}

EdgeMap::EdgeMap(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  check_dims(width_, height_, bits_.size(), "EdgeMap");
  if (!std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b <= 1; })) {
    throw DomainError("EdgeMap: bits must be 0 or 1");
  }
}

std::size_t EdgeMap::count_set() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

HueMap::HueMap(std::size_t width, std::size_t height, std::vector<std::optional<double>> hues)
    : width_(width), height_(height), hues_(std::move(hues)) {
  check_dims(width_, height_, hues_.size(), "HueMap");
  for (const auto& h : hues_) {
    if (h && !(*h >= 0.0 && *h < 1.0)) throw DomainError("HueMap: hue outside [0,1)");
  }
}

}  // namespace artfeat
