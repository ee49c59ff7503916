#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "artfeat/image.hpp"

namespace artfeat::corpus {

// PNG or JPEG (8- or 16-bit, gray or color, alpha ignored). Throws
// DecodeError when the file is missing or undecodable.
RgbImage decode_image(const std::filesystem::path& path);

// Rounds each channel to the nearest of 256 levels.
std::vector<std::uint8_t> quantize_rgb8(const RgbImage& img);

// Lossless 8-bit PNG of quantize_rgb8(img).
void write_png(const RgbImage& img, const std::filesystem::path& path);

bool has_image_extension(const std::filesystem::path& path);

}  // namespace artfeat::corpus
