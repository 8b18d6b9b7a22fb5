#pragma once

// Shared fixtures and independent oracles for the test suites. Nothing here
// calls into the code paths it is used to check.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "retarget/pipeline.hpp"
#include "retarget/raster.hpp"
#include "retarget/seam_carve.hpp"

namespace testing {

using retarget::BinaryMask;
using retarget::EnergyMap;
using retarget::RasterImage;

RasterImage random_image(int width, int height, int channels, std::mt19937_64& rng,
                         bool quantized = false);
BinaryMask random_mask(int width, int height, double density, std::mt19937_64& rng);
EnergyMap random_energy(int width, int height, std::mt19937_64& rng);

/// Minimal PNG writer (stored rows, filter 0, zlib compress) used as the
/// reference codec. channels: 1 gray, 3 RGB, 4 RGBA.
std::vector<std::uint8_t> encode_png_reference(int width, int height, int channels,
                                               const std::vector<std::uint8_t>& samples);
void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);

/// Minimum total energy over every monotone 8-connected top-to-bottom path,
/// by exhaustive enumeration.
double brute_force_min_vertical_seam(const EnergyMap& energy);

/// Per-pixel Chebyshev neighbourhood scan.
BinaryMask brute_force_dilate(const BinaryMask& mask, int radius);

/// Dense Gaussian elimination with partial pivoting. Row-major A (n x n).
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

/// Discrete harmonic fill of `hole` (Dirichlet data from the other pixels,
/// 4-neighbour Laplacian) solved directly, per channel.
RasterImage harmonic_fill_oracle(const RasterImage& image, const BinaryMask& hole);

/// Straightforward per-pixel luminance-gradient energy.
EnergyMap brute_force_energy(const RasterImage& image);

/// Per-pixel bilinear evaluation of the pixel-centre convention.
RasterImage naive_bilinear(const RasterImage& image, int new_width, int new_height);

/// Per-pixel bicubic (Keys, a = -0.5) evaluation with edge clamping.
RasterImage naive_bicubic(const RasterImage& image, int new_width, int new_height);

double max_abs_diff(const RasterImage& a, const RasterImage& b);

/// A flat-coloured scene with one axis-aligned rectangle of a second colour,
/// and the matching mask.
struct Scene {
  RasterImage image;
  BinaryMask mask;
};
Scene rectangle_scene(int width, int height, retarget::Footprint object, float background,
                      float foreground);

/// Smooth textured background with a textured rectangular object.
Scene textured_scene(int width, int height, retarget::Footprint object, std::uint64_t seed);

/// Best fitness over the n_xy x n_xy x n_size lattice spanning the
/// problem's search box (endpoints included).
double grid_oracle_best(const retarget::PlacementProblem& problem, int n_xy = 5, int n_size = 3);

}  // namespace testing
