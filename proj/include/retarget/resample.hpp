#pragma once

#include "retarget/raster.hpp"

namespace retarget {

enum class Interpolation { Nearest, Bilinear, Bicubic };

/// Resizes to new_width x new_height. Source coordinates follow the
/// pixel-center convention s = (d + 0.5) * src/dst - 0.5, clamped to
/// [0, src - 1]. Bicubic uses the Keys kernel with a = -0.5 and edge
/// clamping. Output is clamped to [0, 1].
RasterImage resample(const RasterImage& image, int new_width, int new_height,
                     Interpolation method);

/// Nearest-neighbour resize of a mask with the same coordinate convention.
BinaryMask resample_nearest(const BinaryMask& mask, int new_width, int new_height);

}  // namespace retarget
