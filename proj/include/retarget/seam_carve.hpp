#pragma once

#include <vector>

#include "retarget/raster.hpp"

namespace retarget {

/// Per-pixel non-negative energy, same dimensions as the source image.
struct EnergyMap {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int row, int col) const noexcept {
    return values[static_cast<std::size_t>(row) * width + col];
  }
  double& at(int row, int col) noexcept {
    return values[static_cast<std::size_t>(row) * width + col];
  }
};

EnergyMap transpose(const EnergyMap& energy);

enum class Orientation { Vertical, Horizontal };

/// A monotone 8-connected path. Vertical seams hold one column per row,
/// horizontal seams one row per column.
struct Seam {
  Orientation orientation = Orientation::Vertical;
  std::vector<int> coords;

  bool operator==(const Seam&) const = default;
};

/// e(r,c) = |dL/dx| + |dL/dy| with L the mean of the RGB channels.
/// Central differences inside, one-sided differences on the borders.
EnergyMap energy_map(const RasterImage& image);

/// Minimum-energy top-to-bottom seam by dynamic programming. Ties go to the
/// smallest column, both when picking the end of the seam and at every
/// predecessor choice.
Seam find_vertical_seam(const EnergyMap& energy);

/// find_vertical_seam on the transposed map; ties go to the smallest row.
Seam find_horizontal_seam(const EnergyMap& energy);

double seam_energy(const EnergyMap& energy, const Seam& seam);

/// Throws SeamOutOfBounds if the seam does not fit the image.
RasterImage remove_seam(const RasterImage& image, const Seam& seam);

/// Finds the k lowest-energy disjoint seams (by repeated find-and-remove on
/// a working copy) and duplicates each of them in the original. The new
/// pixel follows the seam pixel and gets the average of its two neighbours
/// in the output. k may be at most max(1, dim / 2); EnlargementTooLarge
/// otherwise.
RasterImage insert_seams(const RasterImage& image, Orientation orientation, int k);

/// Resizes to exactly `target`: width first (vertical seams), then height.
/// Enlargements run in passes of at most half the current dimension.
RasterImage retarget_background(const RasterImage& image, const TargetSize& target);

}  // namespace retarget
