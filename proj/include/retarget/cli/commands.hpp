#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "retarget/pipeline.hpp"

namespace retarget::cli {

/// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point for `retarget <retarget|evaluate|bench> ...`. `args` excludes
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// One (image, target size) run of the evaluation harness.
struct EvalRecord {
  std::string image_id;
  double ratio_w = 1.0;
  double ratio_h = 1.0;
  int target_width = 0;
  int target_height = 0;
  std::optional<double> fitness_total;  // unset when there was nothing to place
  std::map<std::string, double> components;
  double wall_time = 0.0;
  std::string status = "ok";
};

struct DatasetEntry {
  std::string image_id;
  std::filesystem::path image;
  std::filesystem::path mask;
};

/// Every `<id>.png` in `dir` with a sibling `<id>_mask.png`, sorted by id.
/// Images without a mask are reported on `warnings`.
std::vector<DatasetEntry> discover_dataset(const std::filesystem::path& dir, std::ostream& warnings);

/// target = max(1, round(ratio * extent)) per axis.
TargetSize scaled_target(int width, int height, double ratio_w, double ratio_h);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(const std::string& value);

/// 64-bit FNV-1a over the 8-bit quantized pixels; equal rasters after
/// quantization give equal digests.
std::uint64_t raster_digest(const RasterImage& image);

}  // namespace retarget::cli
