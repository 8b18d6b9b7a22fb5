#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "retarget/aesthetic.hpp"
#include "retarget/foreground.hpp"
#include "retarget/inpaint.hpp"
#include "retarget/pso.hpp"
#include "retarget/raster.hpp"

namespace retarget {

/// Sprite placement on the background. x is the row of the sprite's top
/// edge, y the column of its left edge, size the uniform scale applied to
/// the (super-resolved) sprite; size == native_scale restores the original
/// on-screen size.
struct Placement {
  double x = 0.0;
  double y = 0.0;
  double size = 1.0;

  bool operator==(const Placement&) const = default;
};

struct PipelineConfig {
  std::optional<int> dilation_radius;  // unset: default_dilation_radius of the input
  int sr_factor = 4;
  int feather_radius = 2;
  double size_min = 0.5;  // relative to native_scale
  double size_max = 1.5;
  PsoConfig pso;
  AestheticWeights weights;
  DiffusionOptions diffusion;
  std::optional<std::string> scorer_command;          // unset: rule-based scorer
  std::optional<std::string> inpainter_command;       // unset: diffusion fill
  std::optional<std::string> super_resolver_command;  // unset: bicubic

  /// Throws InvalidConfig.
  void validate() const;
};

/// Rounded rectangle the sprite covers: round-half-up of x, y, size*h, size*w.
Footprint footprint_of(const ForegroundSprite& sprite, const Placement& p);

/// Bilinearly scales the sprite to its footprint and alpha-composites it:
/// out = a * fg + (1 - a) * bg. Throws FootprintOutOfBounds.
RasterImage merge(const RasterImage& bg, const ForegroundSprite& sprite, const Placement& p);

/// Static PSO box over (x_hat, y_hat, size): x_hat, y_hat in [0, 1] and
/// size in [size_min * native_scale, s_fit] with
/// s_fit = min(size_max * native_scale, bg_h / sprite_h, bg_w / sprite_w).
/// Throws SpriteTooLarge when the lower size bound exceeds s_fit.
SearchBounds placement_bounds(const RasterImage& bg, const ForegroundSprite& sprite,
                              const PipelineConfig& cfg);

/// Maps a point of the placement box to a Placement:
///   x = x_hat * (bg_h - size * sprite_h),  y = y_hat * (bg_w - size * sprite_w),
/// pulled back where needed so the rounded footprint stays on the canvas.
Placement decode_placement(std::span<const double> candidate, int bg_width, int bg_height,
                           int sprite_width, int sprite_height);

std::unique_ptr<Scorer> make_scorer(const PipelineConfig& cfg);

/// The sprite placement search: fitness of a candidate is the scorer's total
/// for the composition it decodes to.
class PlacementProblem {
 public:
  PlacementProblem(RasterImage background, ForegroundSprite sprite, double original_area_ratio,
                   const PipelineConfig& cfg);

  const SearchBounds& bounds() const noexcept { return bounds_; }
  const ScoringCanvas& canvas() const noexcept { return canvas_; }
  const ForegroundSprite& sprite() const noexcept { return sprite_; }

  Placement decode(std::span<const double> candidate) const;
  FitnessReport evaluate(std::span<const double> candidate) const;
  double fitness(std::span<const double> candidate) const { return evaluate(candidate).total; }
  RasterImage render(const Placement& p) const { return merge(canvas_.background(), sprite_, p); }

 private:
  ScoringCanvas canvas_;
  ForegroundSprite sprite_;
  double original_area_ratio_;
  SearchBounds bounds_;
  std::unique_ptr<Scorer> scorer_;
};

/// Super-resolves the image, upscales the mask by nearest neighbour,
/// extracts and feathers the sprite. native_scale = 1 / sr_factor.
ForegroundSprite prepare_sprite(const RasterImage& image, const BinaryMask& mask,
                                const PipelineConfig& cfg);

/// Foreground bounding-box area over image area.
double foreground_area_ratio(const BinaryMask& mask);

struct StageTimings {
  double dilate = 0.0;
  double inpaint = 0.0;
  double seam_carve = 0.0;
  double super_resolve = 0.0;  // includes sprite extraction and feathering
  double pso = 0.0;            // includes scoring setup and every candidate evaluation
  double merge = 0.0;          // final composite

  double sum() const noexcept { return dilate + inpaint + seam_carve + super_resolve + pso + merge; }
};

struct RetargetResult {
  RasterImage image;
  RasterImage background;                // seam-carved, inpainted background
  std::optional<FitnessReport> fitness;  // unset on the background-only path
  std::optional<Placement> placement;
  std::optional<Footprint> footprint;
  int sprite_width = 0;
  int sprite_height = 0;
  OptimizationTrace trace;
  StageTimings timings;
};

/// dilate -> inpaint -> seam-carve background -> super-resolve and extract
/// the sprite -> PSO over placements -> final merge. An empty mask skips
/// everything after seam carving and returns the background.
RetargetResult retarget(const RasterImage& image, const BinaryMask& mask, const TargetSize& target,
                        const PipelineConfig& cfg = {});

}  // namespace retarget
