#include "retarget/resample.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "retarget/error.hpp"

namespace retarget {

namespace {

// Per-output-index source taps along one axis.
struct AxisTaps {
  int per_output = 0;
  std::vector<int> index;
  std::vector<double> weight;
};

double source_coordinate(int dst, int src_size, int dst_size) {
  const double s = (dst + 0.5) * (static_cast<double>(src_size) / dst_size) - 0.5;
  return std::clamp(s, 0.0, static_cast<double>(src_size - 1));
}

double keys_cubic(double x) {
  constexpr double a = -0.5;
  x = std::abs(x);
  if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
  if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
  return 0.0;
}

AxisTaps make_taps(int src_size, int dst_size, Interpolation method) {
  AxisTaps taps;
  taps.per_output = method == Interpolation::Nearest ? 1 : method == Interpolation::Bilinear ? 2 : 4;
  taps.index.reserve(static_cast<std::size_t>(dst_size) * taps.per_output);
  taps.weight.reserve(static_cast<std::size_t>(dst_size) * taps.per_output);
  for (int d = 0; d < dst_size; ++d) {
    const double s = source_coordinate(d, src_size, dst_size);
    switch (method) {
      case Interpolation::Nearest:
        taps.index.push_back(std::min(static_cast<int>(round_half_up(s)), src_size - 1));
        taps.weight.push_back(1.0);
        break;
      case Interpolation::Bilinear: {
        const int i0 = static_cast<int>(std::floor(s));
        const double t = s - i0;
        taps.index.push_back(i0);
        taps.index.push_back(std::min(i0 + 1, src_size - 1));
        taps.weight.push_back(1.0 - t);
        taps.weight.push_back(t);
        break;
      }
      case Interpolation::Bicubic: {
        const int i0 = static_cast<int>(std::floor(s));
        const double t = s - i0;
        for (int k = -1; k <= 2; ++k) {
          taps.index.push_back(std::clamp(i0 + k, 0, src_size - 1));
          taps.weight.push_back(keys_cubic(k - t));
        }
        break;
      }
    }
  }
  return taps;
}

}  // namespace

RasterImage resample(const RasterImage& image, int new_width, int new_height,
                     Interpolation method) {
  if (new_width < 1 || new_height < 1) {
    throw Error(ErrorCode::InvalidArgument, "resample target must be at least 1x1");
  }
  if (new_width == image.width() && new_height == image.height()) return image;

  const int ch = image.channels();
  const int src_w = image.width();
  const int src_h = image.height();
  const AxisTaps htaps = make_taps(src_w, new_width, method);
  const AxisTaps vtaps = make_taps(src_h, new_height, method);

  // Horizontal pass into a double buffer of new_width x src_h.
  std::vector<double> mid(static_cast<std::size_t>(new_width) * src_h * ch, 0.0);
  for (int r = 0; r < src_h; ++r) {
    const auto src = image.row(r);
    double* dst = mid.data() + static_cast<std::size_t>(r) * new_width * ch;
    for (int d = 0; d < new_width; ++d) {
      for (int k = 0; k < htaps.per_output; ++k) {
        const std::size_t t = static_cast<std::size_t>(d) * htaps.per_output + k;
        const double w = htaps.weight[t];
        const float* px = src.data() + static_cast<std::size_t>(htaps.index[t]) * ch;
        for (int c = 0; c < ch; ++c) dst[d * ch + c] += w * px[c];
      }
    }
  }

  RasterImage out(new_width, new_height, ch);
  const std::size_t stride = static_cast<std::size_t>(new_width) * ch;
  std::vector<double> acc(stride);
  for (int d = 0; d < new_height; ++d) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int k = 0; k < vtaps.per_output; ++k) {
      const std::size_t t = static_cast<std::size_t>(d) * vtaps.per_output + k;
      const double w = vtaps.weight[t];
      const double* src = mid.data() + static_cast<std::size_t>(vtaps.index[t]) * stride;
      for (std::size_t i = 0; i < stride; ++i) acc[i] += w * src[i];
    }
    auto row = out.row(d);
    for (std::size_t i = 0; i < stride; ++i) {
      row[i] = static_cast<float>(std::clamp(acc[i], 0.0, 1.0));
    }
  }
  return out;
}

BinaryMask resample_nearest(const BinaryMask& mask, int new_width, int new_height) {
  if (new_width < 1 || new_height < 1) {
    throw Error(ErrorCode::InvalidArgument, "resample target must be at least 1x1");
  }
  const AxisTaps htaps = make_taps(mask.width(), new_width, Interpolation::Nearest);
  const AxisTaps vtaps = make_taps(mask.height(), new_height, Interpolation::Nearest);
  BinaryMask out(new_width, new_height);
  for (int r = 0; r < new_height; ++r) {
    for (int c = 0; c < new_width; ++c) {
      out.set(r, c, mask.at(vtaps.index[r], htaps.index[c]));
    }
  }
  return out;
}

}  // namespace retarget
