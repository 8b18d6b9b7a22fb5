#pragma once

#include "retarget/raster.hpp"

namespace retarget {

/// Binary dilation with a square structuring element of side 2*radius+1:
/// a pixel is set iff some input pixel within Chebyshev distance `radius`
/// is set. Separable, O(W*H) regardless of radius.
BinaryMask dilate(const BinaryMask& mask, int radius);

/// max(3, round(0.02 * min(H, W))).
int default_dilation_radius(int width, int height);

}  // namespace retarget
