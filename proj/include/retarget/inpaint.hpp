#pragma once

#include <string>

#include "retarget/raster.hpp"

namespace retarget {

struct DiffusionOptions {
  double tol = 1e-4;
  int max_iters = 10'000;
};

/// Harmonic fill of `hole`. Hole pixels start at the per-channel mean of the
/// known pixels and are relaxed with Jacobi sweeps (each becomes the mean of
/// its in-image 4-neighbours) until the largest per-channel change in a
/// sweep drops below `tol` or `max_iters` sweeps have run. Known pixels are
/// never written.
///
/// Throws DimensionMismatch, InvalidArgument, or EmptyImage when the hole
/// covers the whole image.
RasterImage inpaint_diffusion(const RasterImage& image, const BinaryMask& hole, double tol,
                              int max_iters);

inline RasterImage inpaint_diffusion(const RasterImage& image, const BinaryMask& hole,
                                     const DiffusionOptions& options = {}) {
  return inpaint_diffusion(image, hole, options.tol, options.max_iters);
}

/// One Jacobi sweep over the hole, in place, without re-initialisation.
/// Returns the largest per-channel change.
double diffusion_step(RasterImage& image, const BinaryMask& hole);

/// Runs `command <in.png> <mask.png> <out.png>` in a private scratch
/// directory and loads the result. The mask is 8-bit gray, 255 = hole.
/// Throws ExternalToolFailed, DimensionMismatch or IoError.
RasterImage inpaint_external(const RasterImage& image, const BinaryMask& hole,
                             const std::string& command);

}  // namespace retarget
