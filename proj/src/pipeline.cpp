#include "retarget/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "retarget/error.hpp"
#include "retarget/morphology.hpp"
#include "retarget/resample.hpp"
#include "retarget/seam_carve.hpp"

namespace retarget {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void PipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (dilation_radius && *dilation_radius < 0) fail("dilation_radius must be >= 0");
  if (sr_factor < 1) fail("sr_factor must be >= 1");
  if (feather_radius < 0) fail("feather_radius must be >= 0");
  if (!(size_min > 0.0) || !(size_min <= size_max)) fail("need 0 < size_min <= size_max");
  if (!(diffusion.tol > 0.0) || diffusion.max_iters < 1) fail("invalid diffusion options");
  pso.validate();
  weights.validate();
}

Footprint footprint_of(const ForegroundSprite& sprite, const Placement& p) {
  return {static_cast<int>(round_half_up(p.x)), static_cast<int>(round_half_up(p.y)),
          static_cast<int>(round_half_up(p.size * sprite.height())),
          static_cast<int>(round_half_up(p.size * sprite.width()))};
}

RasterImage merge(const RasterImage& bg, const ForegroundSprite& sprite, const Placement& p) {
  const Footprint f = footprint_of(sprite, p);
  if (!f.inside(bg.width(), bg.height())) {
    throw Error(ErrorCode::FootprintOutOfBounds,
                "sprite footprint " + std::to_string(f.width) + "x" + std::to_string(f.height) +
                    "+" + std::to_string(f.col) + "+" + std::to_string(f.row) +
                    " leaves the background");
  }
  const RasterImage scaled = resample(sprite.rgba, f.width, f.height, Interpolation::Bilinear);
  RasterImage out = bg;
  const int ch = bg.channels();
  for (int r = 0; r < f.height; ++r) {
    for (int c = 0; c < f.width; ++c) {
      const float a = scaled.at(r, c, 3);
      const float keep = 1.0f - a;
      for (int k = 0; k < 3; ++k) {
        float& dst = out.at(f.row + r, f.col + c, k);
        dst = a * scaled.at(r, c, k) + keep * dst;
      }
      if (ch == 4) {
        float& dst = out.at(f.row + r, f.col + c, 3);
        dst = a + keep * dst;
      }
    }
  }
  return out;
}

SearchBounds placement_bounds(const RasterImage& bg, const ForegroundSprite& sprite,
                              const PipelineConfig& cfg) {
  const double lo = cfg.size_min * sprite.native_scale;
  const double fit = std::min({cfg.size_max * sprite.native_scale,
                               static_cast<double>(bg.height()) / sprite.height(),
                               static_cast<double>(bg.width()) / sprite.width()});
  if (lo > fit) {
    throw Error(ErrorCode::SpriteTooLarge,
                "sprite does not fit the background even at the minimum size");
  }
  return {{0.0, 0.0, lo}, {1.0, 1.0, fit}};
}

Placement decode_placement(std::span<const double> candidate, int bg_width, int bg_height,
                           int sprite_width, int sprite_height) {
  const double size = candidate[2];
  const double h = size * sprite_height;
  const double w = size * sprite_width;
  const auto rounded_h = std::clamp<long long>(round_half_up(h), 1, bg_height);
  const auto rounded_w = std::clamp<long long>(round_half_up(w), 1, bg_width);
  const double x = std::clamp(candidate[0] * (bg_height - h), 0.0,
                              static_cast<double>(bg_height - rounded_h));
  const double y = std::clamp(candidate[1] * (bg_width - w), 0.0,
                              static_cast<double>(bg_width - rounded_w));
  return {x, y, size};
}

std::unique_ptr<Scorer> make_scorer(const PipelineConfig& cfg) {
  if (cfg.scorer_command) return std::make_unique<ExternalScorer>(*cfg.scorer_command);
  return std::make_unique<RuleBasedScorer>(cfg.weights);
}

PlacementProblem::PlacementProblem(RasterImage background, ForegroundSprite sprite,
                                   double original_area_ratio, const PipelineConfig& cfg)
    : canvas_(std::move(background)),
      sprite_(std::move(sprite)),
      original_area_ratio_(original_area_ratio),
      bounds_(placement_bounds(canvas_.background(), sprite_, cfg)),
      scorer_(make_scorer(cfg)) {}

Placement PlacementProblem::decode(std::span<const double> candidate) const {
  return decode_placement(candidate, canvas_.width(), canvas_.height(), sprite_.width(),
                          sprite_.height());
}

FitnessReport PlacementProblem::evaluate(std::span<const double> candidate) const {
  const Placement p = decode(candidate);
  const CompositionContext ctx{canvas_, footprint_of(sprite_, p), original_area_ratio_};
  return scorer_->evaluate(ctx, [&] { return render(p); });
}

ForegroundSprite prepare_sprite(const RasterImage& image, const BinaryMask& mask,
                                const PipelineConfig& cfg) {
  const int f = cfg.sr_factor;
  const RasterImage sr = cfg.super_resolver_command
                             ? super_resolve_external(image, f, *cfg.super_resolver_command)
                             : super_resolve(image, f);
  const BinaryMask sr_mask = resample_nearest(mask, mask.width() * f, mask.height() * f);
  ForegroundSprite sprite = feather_alpha(extract_sprite(sr, sr_mask), cfg.feather_radius);
  sprite.native_scale = 1.0 / f;
  return sprite;
}

double foreground_area_ratio(const BinaryMask& mask) {
  const Footprint box = bounding_box(mask);
  return static_cast<double>(box.area()) /
         (static_cast<double>(mask.width()) * mask.height());
}

RetargetResult retarget(const RasterImage& image, const BinaryMask& mask, const TargetSize& target,
                        const PipelineConfig& cfg) {
  in_stage("config", [&] {
    cfg.validate();
    target.validate();
  });
  if (mask.width() != image.width() || mask.height() != image.height()) {
    throw Error(ErrorCode::DimensionMismatch, "mask and image dimensions differ");
  }
  RetargetResult result;

  auto t = Clock::now();
  const int radius = cfg.dilation_radius.value_or(default_dilation_radius(image.width(), image.height()));
  const BinaryMask hole = in_stage("dilate", [&] { return dilate(mask, radius); });
  result.timings.dilate = seconds_since(t);

  t = Clock::now();
  const RasterImage inpainted = in_stage("inpaint", [&] {
    return cfg.inpainter_command ? inpaint_external(image, hole, *cfg.inpainter_command)
                                 : inpaint_diffusion(image, hole, cfg.diffusion);
  });
  result.timings.inpaint = seconds_since(t);

  t = Clock::now();
  result.background =
      in_stage("seam-carve", [&] { return retarget_background(inpainted, target); });
  result.timings.seam_carve = seconds_since(t);

  if (!mask.any()) {
    result.image = result.background;
    return result;
  }

  t = Clock::now();
  ForegroundSprite sprite =
      in_stage("super-resolve", [&] { return prepare_sprite(image, mask, cfg); });
  result.timings.super_resolve = seconds_since(t);
  result.sprite_width = sprite.width();
  result.sprite_height = sprite.height();

  t = Clock::now();
  const PlacementProblem problem = in_stage("pso", [&] {
    return PlacementProblem(result.background, std::move(sprite), foreground_area_ratio(mask), cfg);
  });
  in_stage("pso", [&] {
    const PsoResult best = pso_maximize(
        [&](std::span<const double> v) { return problem.fitness(v); }, problem.bounds(), cfg.pso);
    result.trace = best.trace;
    result.fitness = problem.evaluate(best.best_position);
    result.placement = problem.decode(best.best_position);
    result.footprint = footprint_of(problem.sprite(), *result.placement);
  });
  result.timings.pso = seconds_since(t);

  t = Clock::now();
  result.image = in_stage("merge", [&] { return problem.render(*result.placement); });
  result.timings.merge = seconds_since(t);
  return result;
}

}  // namespace retarget
