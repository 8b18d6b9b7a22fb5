#include "retarget/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "retarget/cli/config.hpp"
#include "retarget/error.hpp"
#include "retarget/image_io.hpp"

namespace retarget::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<double> kDefaultRatios = {0.33, 0.66, 1.0, 1.25, 2.0};
const std::vector<std::string> kComponentColumns = {"thirds", "occlusion", "clearance", "scale"};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Options shared by the subcommands that run the pipeline.
struct PipelineFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string scorer;
  std::string inpainter;
  std::string super_resolver;
  std::optional<int> dilation_radius;

  void attach(CLI::App& cmd) {
    cmd.add_option("--config", config_path, "JSON pipeline configuration");
    cmd.add_option("--seed", seed, "PSO random seed");
    cmd.add_option("--scorer", scorer, "rule | external:CMD");
    cmd.add_option("--inpainter", inpainter, "diffusion | external:CMD");
    cmd.add_option("--super-resolver", super_resolver, "bicubic | external:CMD");
    cmd.add_option("--dilation-radius", dilation_radius, "mask dilation radius in pixels")
        ->check(CLI::NonNegativeNumber);
  }

  PipelineConfig build() const {
    PipelineConfig cfg = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    try {
      if (seed) cfg.pso.seed = *seed;
      if (!scorer.empty()) cfg.scorer_command = parse_hook(scorer, "rule");
      if (!inpainter.empty()) cfg.inpainter_command = parse_hook(inpainter, "diffusion");
      if (!super_resolver.empty()) cfg.super_resolver_command = parse_hook(super_resolver, "bicubic");
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    if (dilation_radius) cfg.dilation_radius = *dilation_radius;
    cfg.validate();
    return cfg;
  }
};

struct TargetFlags {
  std::optional<int> width;
  std::optional<int> height;
  std::optional<double> factor_w;
  std::optional<double> factor_h;

  void attach(CLI::App& cmd) {
    cmd.add_option("--width", width, "target width in pixels")->check(CLI::PositiveNumber);
    cmd.add_option("--height", height, "target height in pixels")->check(CLI::PositiveNumber);
    cmd.add_option("--factor-w", factor_w, "target width as a multiple of the source width")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--factor-h", factor_h, "target height as a multiple of the source height")
        ->check(CLI::PositiveNumber);
  }

  bool any() const { return width || height || factor_w || factor_h; }

  TargetSize resolve(int src_w, int src_h) const {
    const bool absolute = width && height;
    const bool relative = factor_w && factor_h;
    if (absolute == relative || (absolute && (factor_w || factor_h)) ||
        (relative && (width || height))) {
      throw UsageError("give either --width and --height, or --factor-w and --factor-h");
    }
    if (absolute) return {*width, *height};
    return scaled_target(src_w, src_h, *factor_w, *factor_h);
  }
};

std::string format_number(double v, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

void write_trace(const fs::path& path, const RetargetResult& result) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write trace " + path.string());
  out << "iteration,fitness,x,y,size\n";
  for (const auto& rec : result.trace) {
    const Placement p =
        decode_placement(rec.best_position, result.background.width(), result.background.height(),
                         result.sprite_width, result.sprite_height);
    out << rec.iteration << ',' << format_number(rec.best_fitness, 12) << ','
        << format_number(p.x, 12) << ',' << format_number(p.y, 12) << ','
        << format_number(p.size, 12) << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void report_error(std::ostream& err, const Error& e) {
  if (const auto* staged = dynamic_cast<const StageError*>(&e)) {
    err << "error [" << staged->stage() << "]: " << e.what() << '\n';
  } else {
    err << "error: " << e.what() << '\n';
  }
}

// ---------------------------------------------------------------------------

int cmd_retarget(const std::string& image_path, const std::string& mask_path,
                 const TargetFlags& target_flags, const PipelineFlags& flags,
                 const std::string& out_path, const std::string& trace_path, std::ostream& out) {
  const PipelineConfig cfg = flags.build();
  const RasterImage image = in_stage("load", [&] { return load_image(image_path); });
  const BinaryMask mask = in_stage("load", [&] { return load_mask(mask_path); });
  const TargetSize target = target_flags.resolve(image.width(), image.height());
  const RetargetResult result = retarget(image, mask, target, cfg);
  in_stage("save", [&] {
    save_image(result.image, out_path);
    if (!trace_path.empty()) write_trace(trace_path, result);
  });
  out << "wrote " << out_path << " (" << result.image.width() << "x" << result.image.height() << ")";
  if (result.fitness) out << " fitness=" << format_number(result.fitness->total);
  out << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------

EvalRecord run_one(const DatasetEntry& entry, const RasterImage& image, const BinaryMask& mask,
                   double rw, double rh, const PipelineConfig& cfg, const fs::path& out_dir,
                   std::ostream& err, std::mutex& err_lock) {
  EvalRecord rec;
  rec.image_id = entry.image_id;
  rec.ratio_w = rw;
  rec.ratio_h = rh;
  const TargetSize target = scaled_target(image.width(), image.height(), rw, rh);
  rec.target_width = target.width;
  rec.target_height = target.height;
  const auto start = Clock::now();
  try {
    const RetargetResult result = retarget(image, mask, target, cfg);
    rec.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    if (result.fitness) {
      rec.fitness_total = result.fitness->total;
      rec.components = result.fitness->components;
    }
    if (!out_dir.empty()) {
      save_image(result.image, out_dir / (entry.image_id + "_" + std::to_string(target.width) + "x" +
                                          std::to_string(target.height) + ".png"));
    }
  } catch (const Error& e) {
    rec.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    rec.status = std::string(to_string(e.code()));
    std::lock_guard lock(err_lock);
    err << "warning: " << entry.image_id << " at " << target.width << "x" << target.height << ": "
        << e.what() << '\n';
  }
  return rec;
}

void write_eval_csv(std::ostream& out, const std::vector<EvalRecord>& records,
                    const std::vector<double>& ratios) {
  out << "kind,image_id,ratio_w,ratio_h,target_width,target_height,fitness_total";
  for (const auto& c : kComponentColumns) out << ',' << c;
  out << ",wall_time,status\n";
  for (const auto& r : records) {
    out << "run," << csv_field(r.image_id) << ',' << format_number(r.ratio_w) << ','
        << format_number(r.ratio_h) << ',' << r.target_width << ',' << r.target_height << ',';
    if (r.fitness_total) out << format_number(*r.fitness_total);
    for (const auto& c : kComponentColumns) {
      out << ',';
      if (auto it = r.components.find(c); it != r.components.end()) out << format_number(it->second);
    }
    out << ',' << format_number(r.wall_time, 6) << ',' << csv_field(r.status) << '\n';
  }
  // One summary row per (ratio_w, ratio_h) pair, averaged over images.
  for (double rw : ratios) {
    for (double rh : ratios) {
      double fit_sum = 0.0, time_sum = 0.0;
      int fit_n = 0, time_n = 0;
      for (const auto& r : records) {
        if (r.ratio_w != rw || r.ratio_h != rh) continue;
        time_sum += r.wall_time;
        ++time_n;
        if (r.fitness_total) {
          fit_sum += *r.fitness_total;
          ++fit_n;
        }
      }
      if (time_n == 0) continue;
      out << "summary,," << format_number(rw) << ',' << format_number(rh) << ",,,";
      if (fit_n > 0) out << format_number(fit_sum / fit_n);
      for (std::size_t i = 0; i < kComponentColumns.size(); ++i) out << ',';
      out << ',' << format_number(time_sum / time_n, 6) << ",\n";
    }
  }
}

int cmd_evaluate(const std::string& dataset, std::vector<double> ratios, const std::string& csv_path,
                 const std::string& out_dir, int jobs, const PipelineFlags& flags, std::ostream& out,
                 std::ostream& err) {
  const PipelineConfig cfg = flags.build();
  if (ratios.empty()) ratios = kDefaultRatios;
  if (!fs::is_directory(dataset)) throw Error(ErrorCode::FileNotFound, dataset);
  if (!out_dir.empty()) fs::create_directories(out_dir);

  struct Loaded {
    DatasetEntry entry;
    RasterImage image;
    BinaryMask mask;
  };
  std::vector<Loaded> loaded;
  const auto entries = discover_dataset(dataset, err);
  for (const auto& entry : entries) {
    try {
      RasterImage image = load_image(entry.image);
      BinaryMask mask = load_mask(entry.mask);
      if (mask.width() != image.width() || mask.height() != image.height()) {
        throw Error(ErrorCode::DimensionMismatch, "mask and image sizes differ");
      }
      loaded.push_back({entry, std::move(image), std::move(mask)});
    } catch (const Error& e) {
      err << "warning: skipping " << entry.image_id << ": " << e.what() << '\n';
    }
  }
  if (loaded.empty()) {
    err << "error: no readable image/mask pairs in " << dataset << '\n';
    return kExitFailure;
  }

  struct Job {
    std::size_t image;
    double rw, rh;
  };
  std::vector<Job> work;
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    for (double rw : ratios) {
      for (double rh : ratios) work.push_back({i, rw, rh});
    }
  }
  std::vector<EvalRecord> records(work.size());
  std::mutex err_lock;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < work.size(); j = next++) {
      const Loaded& l = loaded[work[j].image];
      records[j] = run_one(l.entry, l.image, l.mask, work[j].rw, work[j].rh, cfg, out_dir, err, err_lock);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }
  std::stable_sort(records.begin(), records.end(), [](const EvalRecord& a, const EvalRecord& b) {
    return std::tie(a.image_id, a.target_width, a.target_height) <
           std::tie(b.image_id, b.target_width, b.target_height);
  });

  if (csv_path.empty()) {
    write_eval_csv(out, records, ratios);
  } else {
    std::ofstream file(csv_path);
    if (!file) throw Error(ErrorCode::IoError, "cannot write " + csv_path);
    write_eval_csv(file, records, ratios);
    if (!file) throw Error(ErrorCode::IoError, "write failed for " + csv_path);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_bench(const std::string& image_path, const std::string& mask_path, int repeats,
              const TargetFlags& target_flags, const PipelineFlags& flags, std::ostream& out) {
  const PipelineConfig cfg = flags.build();
  const RasterImage image = in_stage("load", [&] { return load_image(image_path); });
  const BinaryMask mask = in_stage("load", [&] { return load_mask(mask_path); });
  TargetFlags tf = target_flags;
  if (!tf.any()) {
    tf.factor_w = 1.25;
    tf.factor_h = 0.66;
  }
  const TargetSize target = tf.resolve(image.width(), image.height());

  StageTimings sum;
  double total = 0.0;
  std::optional<std::uint64_t> first_digest;
  bool identical = true;
  for (int i = 0; i < repeats; ++i) {
    const auto start = Clock::now();
    const RetargetResult result = retarget(image, mask, target, cfg);
    total += std::chrono::duration<double>(Clock::now() - start).count();
    sum.dilate += result.timings.dilate;
    sum.inpaint += result.timings.inpaint;
    sum.seam_carve += result.timings.seam_carve;
    sum.super_resolve += result.timings.super_resolve;
    sum.pso += result.timings.pso;
    sum.merge += result.timings.merge;
    const std::uint64_t digest = raster_digest(result.image);
    if (first_digest && *first_digest != digest) identical = false;
    if (!first_digest) first_digest = digest;
  }
  const double n = repeats;
  out << "repeats=" << repeats << '\n'
      << "target=" << target.width << 'x' << target.height << '\n'
      << "dilate=" << format_number(sum.dilate / n, 6) << '\n'
      << "inpaint=" << format_number(sum.inpaint / n, 6) << '\n'
      << "seam_carve=" << format_number(sum.seam_carve / n, 6) << '\n'
      << "super_resolve=" << format_number(sum.super_resolve / n, 6) << '\n'
      << "pso=" << format_number(sum.pso / n, 6) << '\n'
      << "merge=" << format_number(sum.merge / n, 6) << '\n'
      << "total=" << format_number(total / n, 6) << '\n'
      << "output_digest=" << std::hex << std::setw(16) << std::setfill('0') << *first_digest
      << std::dec << '\n'
      << "outputs_identical=" << (identical ? 1 : 0) << '\n';
  return kExitOk;
}

}  // namespace

TargetSize scaled_target(int width, int height, double ratio_w, double ratio_h) {
  return {static_cast<int>(std::max<long long>(1, round_half_up(ratio_w * width))),
          static_cast<int>(std::max<long long>(1, round_half_up(ratio_h * height)))};
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char ch : value) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + '"';
}

std::uint64_t raster_digest(const RasterImage& image) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint64_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (int v : {image.width(), image.height(), image.channels()}) {
    for (int s = 0; s < 32; s += 8) mix(static_cast<std::uint64_t>(v >> s) & 0xff);
  }
  for (float v : image.pixels()) mix(quantize(v));
  return h;
}

std::vector<DatasetEntry> discover_dataset(const fs::path& dir, std::ostream& warnings) {
  constexpr std::string_view suffix = "_mask";
  std::vector<DatasetEntry> entries;
  for (const auto& item : fs::directory_iterator(dir)) {
    if (!item.is_regular_file() || item.path().extension() != ".png") continue;
    const std::string stem = item.path().stem().string();
    if (stem.size() >= suffix.size() && stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
      continue;
    }
    const fs::path mask = dir / (stem + "_mask.png");
    if (!fs::is_regular_file(mask)) {
      warnings << "warning: " << item.path().filename().string() << " has no " << mask.filename().string()
               << ", skipped\n";
      continue;
    }
    entries.push_back({stem, item.path(), mask});
  }
  std::sort(entries.begin(), entries.end(),
            [](const DatasetEntry& a, const DatasetEntry& b) { return a.image_id < b.image_id; });
  return entries;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Content-aware image retargeting with separate foreground placement", "retarget"};
  app.require_subcommand(1);

  auto* retarget_cmd = app.add_subcommand("retarget", "retarget one image to a new size");
  std::string image_path, mask_path, out_path = "retargeted.png", trace_path;
  TargetFlags target_flags;
  PipelineFlags retarget_flags;
  retarget_cmd->add_option("--image", image_path, "input image (PNG/PPM/PGM)")->required();
  retarget_cmd->add_option("--mask", mask_path, "foreground mask")->required();
  retarget_cmd->add_option("--out", out_path, "output PNG")->capture_default_str();
  retarget_cmd->add_option("--trace", trace_path, "CSV of the per-iteration global best");
  target_flags.attach(*retarget_cmd);
  retarget_flags.attach(*retarget_cmd);

  auto* eval_cmd = app.add_subcommand("evaluate", "retarget a dataset over an aspect-ratio grid");
  std::string dataset, csv_path, out_dir;
  std::vector<double> ratios;
  int jobs = 1;
  PipelineFlags eval_flags;
  eval_cmd->add_option("--dataset", dataset, "directory of <id>.png + <id>_mask.png pairs")->required();
  eval_cmd->add_option("--ratios", ratios, "comma-separated ratio list (default 0.33,0.66,1.0,1.25,2.0)")
      ->delimiter(',');
  eval_cmd->add_option("--out-csv", csv_path, "CSV destination (default: standard output)");
  eval_cmd->add_option("--out-dir", out_dir, "also save every retargeted image here");
  eval_cmd->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);
  eval_flags.attach(*eval_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "time the pipeline stages");
  std::string bench_image, bench_mask;
  int repeats = 5;
  TargetFlags bench_target;
  PipelineFlags bench_flags;
  bench_cmd->add_option("--image", bench_image, "input image")->required();
  bench_cmd->add_option("--mask", bench_mask, "foreground mask")->required();
  bench_cmd->add_option("--repeats", repeats, "number of timed runs")->check(CLI::PositiveNumber);
  bench_target.attach(*bench_cmd);
  bench_flags.attach(*bench_cmd);

  auto usage_for = [&]() -> std::string {
    for (const auto* sub : {retarget_cmd, eval_cmd, bench_cmd}) {
      if (sub->parsed()) return sub->help();
    }
    return app.help();
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << usage_for();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << usage_for();
    return kExitUsage;
  }

  try {
    if (retarget_cmd->parsed()) {
      return cmd_retarget(image_path, mask_path, target_flags, retarget_flags, out_path, trace_path, out);
    }
    if (eval_cmd->parsed()) {
      return cmd_evaluate(dataset, ratios, csv_path, out_dir, jobs, eval_flags, out, err);
    }
    return cmd_bench(bench_image, bench_mask, repeats, bench_target, bench_flags, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage_for();
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, e);
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace retarget::cli
