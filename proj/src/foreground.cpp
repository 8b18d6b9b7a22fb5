#include "retarget/foreground.hpp"

#include <algorithm>
#include <vector>

#include "retarget/error.hpp"
#include "retarget/external.hpp"
#include "retarget/image_io.hpp"
#include "retarget/resample.hpp"

namespace retarget {

RasterImage super_resolve(const RasterImage& image, int factor) {
  if (factor < 1) throw Error(ErrorCode::InvalidArgument, "super-resolution factor must be >= 1");
  return resample(image, image.width() * factor, image.height() * factor, Interpolation::Bicubic);
}

RasterImage super_resolve_external(const RasterImage& image, int factor,
                                   const std::string& command) {
  if (factor < 1) throw Error(ErrorCode::InvalidArgument, "super-resolution factor must be >= 1");
  TempDir dir;
  const auto in_path = dir.path() / "in.png";
  const auto out_path = dir.path() / "out.png";
  save_image(image, in_path);
  const CommandResult res =
      run_command(command, {in_path.string(), std::to_string(factor), out_path.string()});
  if (res.exit_code != 0) {
    throw Error(ErrorCode::ExternalToolFailed,
                "super-resolver exited with status " + std::to_string(res.exit_code));
  }
  RasterImage out = load_image(out_path);
  if (out.width() != image.width() * factor || out.height() != image.height() * factor) {
    throw Error(ErrorCode::DimensionMismatch, "super-resolver output is " +
                                                  std::to_string(out.width()) + "x" +
                                                  std::to_string(out.height()));
  }
  return out;
}

ForegroundSprite extract_sprite(const RasterImage& sr_image, const BinaryMask& sr_mask) {
  if (sr_mask.width() != sr_image.width() || sr_mask.height() != sr_image.height()) {
    throw Error(ErrorCode::DimensionMismatch, "mask does not match super-resolved image");
  }
  const Footprint box = bounding_box(sr_mask);
  if (box.area() == 0) throw Error(ErrorCode::NoForeground, "mask has no foreground pixels");

  RasterImage rgba(box.width, box.height, 4);
  for (int r = 0; r < box.height; ++r) {
    for (int c = 0; c < box.width; ++c) {
      for (int k = 0; k < 3; ++k) rgba.at(r, c, k) = sr_image.at(box.row + r, box.col + c, k);
      rgba.at(r, c, 3) = sr_mask.at(box.row + r, box.col + c) ? 1.0f : 0.0f;
    }
  }
  return {std::move(rgba), 1.0, box};
}

ForegroundSprite feather_alpha(const ForegroundSprite& sprite, int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "feather radius must be >= 0");
  if (radius == 0) return sprite;
  const int w = sprite.width();
  const int h = sprite.height();
  const double norm = 1.0 / (2 * radius + 1);

  std::vector<double> horizontal(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double sum = 0.0;
      for (int d = -radius; d <= radius; ++d) sum += sprite.rgba.at(r, std::clamp(c + d, 0, w - 1), 3);
      horizontal[static_cast<std::size_t>(r) * w + c] = sum * norm;
    }
  }
  ForegroundSprite out = sprite;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double sum = 0.0;
      for (int d = -radius; d <= radius; ++d) {
        sum += horizontal[static_cast<std::size_t>(std::clamp(r + d, 0, h - 1)) * w + c];
      }
      out.rgba.at(r, c, 3) = static_cast<float>(std::clamp(sum * norm, 0.0, 1.0));
    }
  }
  return out;
}

}  // namespace retarget
