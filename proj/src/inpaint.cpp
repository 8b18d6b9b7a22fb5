#include "retarget/inpaint.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "retarget/error.hpp"
#include "retarget/external.hpp"
#include "retarget/image_io.hpp"

namespace retarget {

namespace {

void check_hole(const RasterImage& image, const BinaryMask& hole) {
  if (hole.width() != image.width() || hole.height() != image.height()) {
    throw Error(ErrorCode::DimensionMismatch, "hole mask does not match image dimensions");
  }
}

// Hole pixels with their in-image 4-neighbours (pixel indices, -1 = none).
struct HoleGraph {
  std::vector<std::size_t> pixels;
  std::vector<std::array<long, 4>> neighbours;
};

HoleGraph build_graph(const BinaryMask& hole) {
  HoleGraph g;
  const int w = hole.width();
  const int h = hole.height();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (!hole.at(r, c)) continue;
      g.pixels.push_back(static_cast<std::size_t>(r) * w + c);
      std::array<long, 4> n{-1, -1, -1, -1};
      if (r > 0) n[0] = static_cast<long>(r - 1) * w + c;
      if (r + 1 < h) n[1] = static_cast<long>(r + 1) * w + c;
      if (c > 0) n[2] = static_cast<long>(r) * w + c - 1;
      if (c + 1 < w) n[3] = static_cast<long>(r) * w + c + 1;
      g.neighbours.push_back(n);
    }
  }
  return g;
}

// Jacobi sweep over `values` (interleaved, `ch` per pixel); `next` is scratch.
double sweep(std::vector<double>& values, int ch, const HoleGraph& g, std::vector<double>& next) {
  next.resize(g.pixels.size() * ch);
  for (std::size_t i = 0; i < g.pixels.size(); ++i) {
    int count = 0;
    for (int c = 0; c < ch; ++c) next[i * ch + c] = 0.0;
    for (long n : g.neighbours[i]) {
      if (n < 0) continue;
      ++count;
      for (int c = 0; c < ch; ++c) next[i * ch + c] += values[static_cast<std::size_t>(n) * ch + c];
    }
    for (int c = 0; c < ch; ++c) next[i * ch + c] /= count;
  }
  double max_change = 0.0;
  for (std::size_t i = 0; i < g.pixels.size(); ++i) {
    for (int c = 0; c < ch; ++c) {
      double& v = values[g.pixels[i] * ch + c];
      max_change = std::max(max_change, std::abs(next[i * ch + c] - v));
      v = next[i * ch + c];
    }
  }
  return max_change;
}

}  // namespace

RasterImage inpaint_diffusion(const RasterImage& image, const BinaryMask& hole, double tol,
                              int max_iters) {
  check_hole(image, hole);
  if (!(tol > 0.0) || max_iters < 1) {
    throw Error(ErrorCode::InvalidArgument, "inpainting needs tol > 0 and max_iters >= 1");
  }
  const std::size_t hole_count = hole.count();
  if (hole_count == 0) return image;
  const std::size_t total = static_cast<std::size_t>(image.width()) * image.height();
  if (hole_count == total) {
    throw Error(ErrorCode::EmptyImage, "hole covers every pixel, no boundary data");
  }

  const int ch = image.channels();
  const auto px = image.pixels();
  std::vector<double> values(px.begin(), px.end());
  std::vector<double> mean(ch, 0.0);
  for (std::size_t i = 0; i < total; ++i) {
    if (hole.bits()[i]) continue;
    for (int c = 0; c < ch; ++c) mean[c] += values[i * ch + c];
  }
  for (auto& m : mean) m /= static_cast<double>(total - hole_count);

  const HoleGraph graph = build_graph(hole);
  for (std::size_t p : graph.pixels) {
    for (int c = 0; c < ch; ++c) values[p * ch + c] = mean[c];
  }

  std::vector<double> scratch;
  for (int it = 0; it < max_iters; ++it) {
    if (sweep(values, ch, graph, scratch) < tol) break;
  }

  RasterImage out = image;
  auto dst = out.pixels();
  for (std::size_t p : graph.pixels) {
    for (int c = 0; c < ch; ++c) {
      dst[p * ch + c] = static_cast<float>(std::clamp(values[p * ch + c], 0.0, 1.0));
    }
  }
  return out;
}

double diffusion_step(RasterImage& image, const BinaryMask& hole) {
  check_hole(image, hole);
  const int ch = image.channels();
  auto px = image.pixels();
  std::vector<double> values(px.begin(), px.end());
  const HoleGraph graph = build_graph(hole);
  std::vector<double> scratch;
  const double change = sweep(values, ch, graph, scratch);
  for (std::size_t p : graph.pixels) {
    for (int c = 0; c < ch; ++c) px[p * ch + c] = static_cast<float>(values[p * ch + c]);
  }
  return change;
}

RasterImage inpaint_external(const RasterImage& image, const BinaryMask& hole,
                             const std::string& command) {
  check_hole(image, hole);
  TempDir dir;
  const auto in_path = dir.path() / "in.png";
  const auto mask_path = dir.path() / "mask.png";
  const auto out_path = dir.path() / "out.png";
  save_image(image, in_path);
  save_mask(hole, mask_path);
  const CommandResult res =
      run_command(command, {in_path.string(), mask_path.string(), out_path.string()});
  if (res.exit_code != 0) {
    throw Error(ErrorCode::ExternalToolFailed,
                "inpainter exited with status " + std::to_string(res.exit_code));
  }
  RasterImage out;
  try {
    out = load_image(out_path);
  } catch (const Error& e) {
    throw Error(ErrorCode::IoError, std::string("cannot read inpainter output: ") + e.what());
  }
  if (out.width() != image.width() || out.height() != image.height()) {
    throw Error(ErrorCode::DimensionMismatch, "inpainter output is " + std::to_string(out.width()) +
                                                  "x" + std::to_string(out.height()));
  }
  return out;
}

}  // namespace retarget
