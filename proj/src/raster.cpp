#include "retarget/raster.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "retarget/error.hpp"

namespace retarget {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
}

}  // namespace

RasterImage::RasterImage(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height);
  if (channels != 3 && channels != 4) {
    throw Error(ErrorCode::InvalidArgument, "channels must be 3 or 4");
  }
  pixels_.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

RasterImage::RasterImage(int width, int height, int channels, std::vector<float> pixels)
    : width_(width), height_(height), channels_(channels), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (channels != 3 && channels != 4) {
    throw Error(ErrorCode::InvalidArgument, "channels must be 3 or 4");
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw Error(ErrorCode::InvalidArgument, "pixel buffer length does not match dimensions");
  }
}

void RasterImage::clamp() {
  for (auto& v : pixels_) v = std::clamp(v, 0.0f, 1.0f);
}

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
  check_dims(width, height);
  bits_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void TargetSize::validate() const {
  if (width < 1 || height < 1) {
    throw Error(ErrorCode::InvalidArgument, "target size must be at least 1x1, got " +
                                                std::to_string(width) + "x" +
                                                std::to_string(height));
  }
}

Footprint bounding_box(const BinaryMask& mask) {
  int top = mask.height(), bottom = -1, left = mask.width(), right = -1;
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      if (!mask.at(r, c)) continue;
      top = std::min(top, r);
      bottom = std::max(bottom, r);
      left = std::min(left, c);
      right = std::max(right, c);
    }
  }
  if (bottom < 0) return {};
  return {top, left, bottom - top + 1, right - left + 1};
}

RasterImage transpose(const RasterImage& image) {
  RasterImage out(image.height(), image.width(), image.channels());
  const int ch = image.channels();
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      for (int k = 0; k < ch; ++k) out.at(c, r, k) = image.at(r, c, k);
    }
  }
  return out;
}

}  // namespace retarget
