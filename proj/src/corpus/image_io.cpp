#include "artfeat/corpus/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "artfeat/error.hpp"

namespace artfeat::corpus {

bool has_image_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

RgbImage decode_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw DecodeError(path.string() + ": no such file");
  }
  cv::Mat mat;
  try {
    mat = cv::imread(path.string(), cv::IMREAD_COLOR | cv::IMREAD_ANYDEPTH);
  } catch (const cv::Exception& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
  if (mat.empty()) throw DecodeError(path.string() + ": not a decodable PNG or JPEG");

  double scale = 0.0;
  switch (mat.depth()) {
    case CV_8U: scale = 1.0 / 255.0; break;
    case CV_16U: scale = 1.0 / 65535.0; break;
    default: throw DecodeError(path.string() + ": unsupported sample depth");
  }

  const auto w = static_cast<std::size_t>(mat.cols);
  const auto h = static_cast<std::size_t>(mat.rows);
  std::vector<Rgb> px(w * h);
  for (int y = 0; y < mat.rows; ++y) {
    for (int x = 0; x < mat.cols; ++x) {
      double b = 0, g = 0, r = 0;
      if (mat.depth() == CV_8U) {
        const auto& v = mat.at<cv::Vec3b>(y, x);
        b = v[0], g = v[1], r = v[2];
      } else {
        const auto& v = mat.at<cv::Vec3w>(y, x);
        b = v[0], g = v[1], r = v[2];
      }
      px[static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x)] = {r * scale, g * scale,
                                                                           b * scale};
    }
  }
  return RgbImage(w, h, std::move(px));
}

std::vector<std::uint8_t> quantize_rgb8(const RgbImage& img) {
  std::vector<std::uint8_t> out(img.size() * 3);
  auto q = [](double v) { return static_cast<std::uint8_t>(std::lround(v * 255.0)); };
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    out[3 * i] = q(px[i].r);
    out[3 * i + 1] = q(px[i].g);
    out[3 * i + 2] = q(px[i].b);
  }
  return out;
}

void write_png(const RgbImage& img, const std::filesystem::path& path) {
  const auto rgb = quantize_rgb8(img);
  cv::Mat mat(static_cast<int>(img.height()), static_cast<int>(img.width()), CV_8UC3);
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      const std::size_t i = 3 * (y * img.width() + x);
      mat.at<cv::Vec3b>(static_cast<int>(y), static_cast<int>(x)) = {rgb[i + 2], rgb[i + 1], rgb[i]};
    }
  }
  const std::vector<int> params{cv::IMWRITE_PNG_COMPRESSION, 6};
  if (!cv::imwrite(path.string(), mat, params)) {
    throw DecodeError("cannot write PNG " + path.string());
  }
}

}  // namespace artfeat::corpus
