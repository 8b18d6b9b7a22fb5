#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace retarget {

/// Row-major H x W x C grid of intensities in [0, 1]. Channels is 3 (RGB)
/// or 4 (RGBA). Intensities are kept as floats through the whole pipeline
/// and only quantized to 8 bits when written to disk.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, int channels, float fill = 0.0f);
  RasterImage(int width, int height, int channels, std::vector<float> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return pixels_.empty(); }
  bool has_alpha() const noexcept { return channels_ == 4; }

  float& at(int row, int col, int ch) noexcept {
    return pixels_[index(row, col, ch)];
  }
  float at(int row, int col, int ch) const noexcept {
    return pixels_[index(row, col, ch)];
  }

  std::span<float> row(int r) noexcept {
    return {pixels_.data() + static_cast<std::size_t>(r) * width_ * channels_,
            static_cast<std::size_t>(width_) * channels_};
  }
  std::span<const float> row(int r) const noexcept {
    return {pixels_.data() + static_cast<std::size_t>(r) * width_ * channels_,
            static_cast<std::size_t>(width_) * channels_};
  }

  std::span<float> pixels() noexcept { return pixels_; }
  std::span<const float> pixels() const noexcept { return pixels_; }

  /// Clamps every intensity into [0, 1].
  void clamp();

  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t index(int row, int col, int ch) const noexcept {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_ + ch;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> pixels_;
};

/// Row-major boolean foreground indicator (true = foreground).
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(int width, int height, bool fill = false);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  bool at(int row, int col) const noexcept {
    return bits_[static_cast<std::size_t>(row) * width_ + col] != 0;
  }
  void set(int row, int col, bool value) noexcept {
    bits_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0;
  }

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  std::size_t count() const noexcept;
  bool any() const noexcept { return count() > 0; }

  bool operator==(const BinaryMask&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct TargetSize {
  int width = 1;
  int height = 1;

  /// Throws InvalidArgument unless both dimensions are at least 1.
  void validate() const;

  bool operator==(const TargetSize&) const = default;
};

/// Axis-aligned pixel rectangle inside some canvas.
struct Footprint {
  int row = 0;
  int col = 0;
  int height = 0;
  int width = 0;

  long long area() const noexcept { return static_cast<long long>(height) * width; }
  bool inside(int canvas_width, int canvas_height) const noexcept {
    return height > 0 && width > 0 && row >= 0 && col >= 0 &&
           row + height <= canvas_height && col + width <= canvas_width;
  }

  bool operator==(const Footprint&) const = default;
};

/// Tight bounding box of the true bits; height/width are zero for an empty mask.
Footprint bounding_box(const BinaryMask& mask);

inline long long round_half_up(double v) {
  return static_cast<long long>(std::floor(v + 0.5));
}

RasterImage transpose(const RasterImage& image);

}  // namespace retarget
