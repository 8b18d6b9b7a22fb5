#pragma once

#include <filesystem>

#include "retarget/raster.hpp"

namespace retarget {

/// Loads an 8-bit PNG (gray, gray+alpha, RGB, RGBA, palette) or a binary
/// PPM (P6) / PGM (P5). Gray sources are expanded to RGB. Intensities are
/// scaled to [0, 1] by dividing by the file's maximum value.
///
/// Throws FileNotFound, UnsupportedFormat or CorruptData.
RasterImage load_image(const std::filesystem::path& path);

/// Writes PNG unless the extension is .ppm (P6, alpha dropped) or .pgm
/// (P5, channel mean). Each channel is quantized as floor(v * 255 + 0.5).
/// Throws IoError.
void save_image(const RasterImage& image, const std::filesystem::path& path);

/// A pixel is foreground iff the mean of its color channels exceeds 0.5.
BinaryMask load_mask(const std::filesystem::path& path);

/// 8-bit gray PNG, 255 for true bits.
void save_mask(const BinaryMask& mask, const std::filesystem::path& path);

std::uint8_t quantize(float v);

}  // namespace retarget
