#include "retarget/aesthetic.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "retarget/error.hpp"
#include "retarget/external.hpp"
#include "retarget/image_io.hpp"

namespace retarget {

namespace {

constexpr double kEnergyEpsilon = 1e-9;

}  // namespace

void AestheticWeights::validate() const {
  if (thirds < 0 || occlusion < 0 || clearance < 0 || scale < 0) {
    throw Error(ErrorCode::InvalidConfig, "aesthetic weights must be non-negative");
  }
  if (thirds + occlusion + clearance + scale <= 0) {
    throw Error(ErrorCode::InvalidConfig, "aesthetic weights must not all be zero");
  }
}

ScoringCanvas::ScoringCanvas(RasterImage background)
    : background_(std::move(background)), energy_(energy_map(background_)) {
  const int w = energy_.width;
  const int h = energy_.height;
  table_.assign(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
  for (int r = 0; r < h; ++r) {
    double row_sum = 0.0;
    for (int c = 0; c < w; ++c) {
      row_sum += energy_.at(r, c);
      table_[static_cast<std::size_t>(r + 1) * (w + 1) + c + 1] =
          table_[static_cast<std::size_t>(r) * (w + 1) + c + 1] + row_sum;
    }
  }
}

double ScoringCanvas::mean_energy() const noexcept {
  return mean_energy(Footprint{0, 0, height(), width()});
}

double ScoringCanvas::mean_energy(const Footprint& f) const noexcept {
  const std::size_t stride = static_cast<std::size_t>(width()) + 1;
  auto at = [&](int r, int c) { return table_[static_cast<std::size_t>(r) * stride + c]; };
  const int r1 = f.row + f.height;
  const int c1 = f.col + f.width;
  const double sum = at(r1, c1) - at(f.row, c1) - at(r1, f.col) + at(f.row, f.col);
  return std::max(0.0, sum) / static_cast<double>(f.area());
}

FitnessReport score_rule_based(const CompositionContext& ctx, const AestheticWeights& weights) {
  weights.validate();
  const ScoringCanvas& canvas = ctx.canvas;
  const Footprint& f = ctx.footprint;
  if (!f.inside(canvas.width(), canvas.height())) {
    throw Error(ErrorCode::FootprintOutOfBounds, "footprint leaves the canvas");
  }
  if (!(ctx.original_area_ratio > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "original area ratio must be positive");
  }
  const double H = canvas.height();
  const double W = canvas.width();

  const double cy = f.row + f.height / 2.0;
  const double cx = f.col + f.width / 2.0;
  double nearest = std::numeric_limits<double>::infinity();
  for (double ty : {H / 3.0, 2.0 * H / 3.0}) {
    for (double tx : {W / 3.0, 2.0 * W / 3.0}) nearest = std::min(nearest, std::hypot(cy - ty, cx - tx));
  }
  const double thirds = std::clamp(1.0 - nearest / (std::hypot(H, W) / 3.0), 0.0, 1.0);

  const double occlusion = std::clamp(
      1.0 - canvas.mean_energy(f) / std::max(canvas.mean_energy(), kEnergyEpsilon), 0.0, 1.0);

  const int margin = std::min({f.row, f.col, canvas.height() - (f.row + f.height),
                               canvas.width() - (f.col + f.width)});
  const double clearance = std::min(1.0, 2.0 * margin / std::min(H, W));

  const double area_ratio = static_cast<double>(f.area()) / (H * W);
  const double scale = std::exp(-std::abs(std::log(area_ratio / ctx.original_area_ratio)));

  FitnessReport report;
  report.components = {{"thirds", thirds}, {"occlusion", occlusion}, {"clearance", clearance},
                       {"scale", scale}};
  report.weights = {{"thirds", weights.thirds}, {"occlusion", weights.occlusion},
                    {"clearance", weights.clearance}, {"scale", weights.scale}};
  double num = 0.0;
  double den = 0.0;
  for (const auto& [name, w] : report.weights) {
    num += w * report.components.at(name);
    den += w;
  }
  report.total = num / den;
  return report;
}

double score_external(const RasterImage& image, const std::string& command) {
  TempDir dir;
  const auto path = dir.path() / "candidate.png";
  save_image(image, path);
  const CommandResult res = run_command(command, {path.string()});
  if (res.exit_code != 0) {
    throw Error(ErrorCode::ExternalToolFailed,
                "scorer exited with status " + std::to_string(res.exit_code));
  }
  std::istringstream in(res.standard_output);
  std::string token;
  if (!(in >> token)) throw Error(ErrorCode::UnparsableScore, "scorer printed nothing");
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::UnparsableScore, "cannot parse score '" + token + "'");
  }
  return value;
}

RuleBasedScorer::RuleBasedScorer(AestheticWeights weights) : weights_(weights) {
  weights_.validate();
}

FitnessReport RuleBasedScorer::evaluate(const CompositionContext& ctx,
                                        const std::function<RasterImage()>&) const {
  return score_rule_based(ctx, weights_);
}

FitnessReport ExternalScorer::evaluate(const CompositionContext&,
                                       const std::function<RasterImage()>& render) const {
  const double score = score_external(render(), command_);
  return {score, {{"external", score}}, {{"external", 1.0}}};
}

}  // namespace retarget
