#pragma once

#include <string>

#include "retarget/raster.hpp"

namespace retarget {

/// RGBA cutout of the foreground at super-resolved scale.
struct ForegroundSprite {
  RasterImage rgba;          // 4 channels, alpha from the mask
  double native_scale = 1.0; // scale that maps the sprite back to original size (1 / sr_factor)
  Footprint source_box;      // tight mask bounding box in the super-resolved frame

  int width() const noexcept { return rgba.width(); }
  int height() const noexcept { return rgba.height(); }
};

/// Bicubic enlargement to (factor*W, factor*H).
RasterImage super_resolve(const RasterImage& image, int factor);

/// Runs `command <in.png> <factor> <out.png>`; the result must be exactly
/// factor times larger on both axes (DimensionMismatch otherwise).
RasterImage super_resolve_external(const RasterImage& image, int factor,
                                   const std::string& command);

/// Crops to the tight bounding box of `sr_mask`. RGB comes from `sr_image`,
/// alpha is 1 on mask pixels and 0 elsewhere. native_scale is left at 1 for
/// the caller to set. Throws NoForeground for an all-false mask.
ForegroundSprite extract_sprite(const RasterImage& sr_image, const BinaryMask& sr_mask);

/// Box-filters alpha with side 2*radius+1, clamping at the sprite edges.
ForegroundSprite feather_alpha(const ForegroundSprite& sprite, int radius);

}  // namespace retarget
