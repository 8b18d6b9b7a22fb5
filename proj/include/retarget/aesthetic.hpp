#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "retarget/raster.hpp"
#include "retarget/seam_carve.hpp"

namespace retarget {

struct AestheticWeights {
  double thirds = 0.35;
  double occlusion = 0.30;
  double clearance = 0.15;
  double scale = 0.20;

  /// Throws InvalidConfig for negative weights or an all-zero set.
  void validate() const;
};

struct FitnessReport {
  double total = 0.0;
  std::map<std::string, double> components;
  std::map<std::string, double> weights;
};

/// A retargeted background with its energy map and a summed-area table of
/// it, built once so scoring a candidate costs O(1).
class ScoringCanvas {
 public:
  explicit ScoringCanvas(RasterImage background);

  const RasterImage& background() const noexcept { return background_; }
  const EnergyMap& energy() const noexcept { return energy_; }
  int width() const noexcept { return background_.width(); }
  int height() const noexcept { return background_.height(); }

  double mean_energy() const noexcept;
  double mean_energy(const Footprint& region) const noexcept;

 private:
  RasterImage background_;
  EnergyMap energy_;
  std::vector<double> table_;  // (h+1) x (w+1) summed-area table
};

struct CompositionContext {
  const ScoringCanvas& canvas;
  Footprint footprint;         // sprite rectangle in canvas pixels
  double original_area_ratio;  // foreground bbox area / original image area
};

/// Rule-based composition score. Four terms, each in [0, 1]:
///   thirds    = 1 - d / d_max, d from the footprint centre to the nearest
///               rule-of-thirds intersection, d_max = hypot(H, W) / 3
///   occlusion = 1 - mean energy under the footprint / max(mean energy, 1e-9)
///   clearance = min(1, 2 * smallest edge margin / min(H, W))
///   scale     = exp(-|ln(footprint area ratio / original area ratio)|)
/// The total is their weighted mean. Throws FootprintOutOfBounds.
FitnessReport score_rule_based(const CompositionContext& ctx, const AestheticWeights& weights = {});

/// Runs `command <image.png>` and parses one decimal number from stdout.
/// Throws ExternalToolFailed or UnparsableScore.
double score_external(const RasterImage& image, const std::string& command);

/// Objective used by the placement search. `render` produces the merged
/// image for scorers that need pixels; rule-based scoring never calls it.
class Scorer {
 public:
  virtual ~Scorer() = default;
  virtual FitnessReport evaluate(const CompositionContext& ctx,
                                 const std::function<RasterImage()>& render) const = 0;
};

class RuleBasedScorer final : public Scorer {
 public:
  explicit RuleBasedScorer(AestheticWeights weights = {});
  FitnessReport evaluate(const CompositionContext& ctx,
                         const std::function<RasterImage()>& render) const override;

 private:
  AestheticWeights weights_;
};

/// Wraps score_external. The report's total is the raw external score,
/// which is not guaranteed to lie in [0, 1].
class ExternalScorer final : public Scorer {
 public:
  explicit ExternalScorer(std::string command) : command_(std::move(command)) {}
  FitnessReport evaluate(const CompositionContext& ctx,
                         const std::function<RasterImage()>& render) const override;

 private:
  std::string command_;
};

}  // namespace retarget
