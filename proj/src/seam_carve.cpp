#include "retarget/seam_carve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "retarget/error.hpp"

namespace retarget {

namespace {

struct Plane {
  int width = 0;
  int height = 0;
  std::vector<double> values;
};

Plane luminance(const RasterImage& image) {
  Plane plane{image.width(), image.height(), {}};
  plane.values.resize(static_cast<std::size_t>(image.width()) * image.height());
  const int ch = image.channels();
  const auto px = image.pixels();
  for (std::size_t i = 0; i < plane.values.size(); ++i) {
    const float* p = px.data() + i * ch;
    plane.values[i] = (static_cast<double>(p[0]) + p[1] + p[2]) / 3.0;
  }
  return plane;
}

EnergyMap energy_of(const Plane& lum) {
  const int w = lum.width;
  const int h = lum.height;
  EnergyMap e{w, h, std::vector<double>(lum.values.size(), 0.0)};
  auto L = [&](int r, int c) { return lum.values[static_cast<std::size_t>(r) * w + c]; };
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double dx = 0.0;
      if (w > 1) {
        if (c == 0) dx = L(r, 1) - L(r, 0);
        else if (c == w - 1) dx = L(r, w - 1) - L(r, w - 2);
        else dx = (L(r, c + 1) - L(r, c - 1)) / 2.0;
      }
      double dy = 0.0;
      if (h > 1) {
        if (r == 0) dy = L(1, c) - L(0, c);
        else if (r == h - 1) dy = L(h - 1, c) - L(h - 2, c);
        else dy = (L(r + 1, c) - L(r - 1, c)) / 2.0;
      }
      e.at(r, c) = std::abs(dx) + std::abs(dy);
    }
  }
  return e;
}

// Drops one element group per row, in place. `elem` values per pixel.
template <typename T>
void remove_columns(std::vector<T>& data, int width, int height, int elem,
                    const std::vector<int>& cols) {
  std::size_t write = 0;
  for (int r = 0; r < height; ++r) {
    const std::size_t row_start = static_cast<std::size_t>(r) * width * elem;
    const std::size_t skip_begin = row_start + static_cast<std::size_t>(cols[r]) * elem;
    const std::size_t row_end = row_start + static_cast<std::size_t>(width) * elem;
    for (std::size_t i = row_start; i < row_end; ++i) {
      if (i >= skip_begin && i < skip_begin + elem) continue;
      data[write++] = data[i];
    }
  }
  data.resize(write);
}

void check_seam(const Seam& seam, int width, int height) {
  const bool vertical = seam.orientation == Orientation::Vertical;
  const int length = vertical ? height : width;
  const int extent = vertical ? width : height;
  if (static_cast<int>(seam.coords.size()) != length) {
    throw Error(ErrorCode::SeamOutOfBounds, "seam length " + std::to_string(seam.coords.size()) +
                                                " does not match image extent " +
                                                std::to_string(length));
  }
  if (extent < 2) {
    throw Error(ErrorCode::SeamOutOfBounds, "cannot remove a seam from a one-pixel-wide image");
  }
  for (std::size_t i = 0; i < seam.coords.size(); ++i) {
    if (seam.coords[i] < 0 || seam.coords[i] >= extent) {
      throw Error(ErrorCode::SeamOutOfBounds, "seam coordinate out of range at " + std::to_string(i));
    }
    if (i > 0 && std::abs(seam.coords[i] - seam.coords[i - 1]) > 1) {
      throw Error(ErrorCode::SeamOutOfBounds, "seam is not 8-connected at " + std::to_string(i));
    }
  }
}

RasterImage remove_vertical(const RasterImage& image, const std::vector<int>& cols) {
  std::vector<float> buf(image.pixels().begin(), image.pixels().end());
  remove_columns(buf, image.width(), image.height(), image.channels(), cols);
  return RasterImage(image.width() - 1, image.height(), image.channels(), std::move(buf));
}

RasterImage insert_vertical(const RasterImage& image, int k) {
  const int w = image.width();
  const int h = image.height();
  const int ch = image.channels();

  // Working copy: luminance plus the original column of every surviving pixel.
  Plane lum = luminance(image);
  std::vector<int> origin(static_cast<std::size_t>(w) * h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) origin[static_cast<std::size_t>(r) * w + c] = c;
  }
  std::vector<std::uint8_t> duplicated(static_cast<std::size_t>(w) * h, 0);
  for (int n = 0; n < k; ++n) {
    const Seam seam = find_vertical_seam(energy_of(lum));
    for (int r = 0; r < h; ++r) {
      const int orig = origin[static_cast<std::size_t>(r) * lum.width + seam.coords[r]];
      duplicated[static_cast<std::size_t>(r) * w + orig] = 1;
    }
    remove_columns(lum.values, lum.width, h, 1, seam.coords);
    remove_columns(origin, lum.width, h, 1, seam.coords);
    --lum.width;
  }

  const int out_w = w + k;
  RasterImage out(out_w, h, ch);
  for (int r = 0; r < h; ++r) {
    const auto src = image.row(r);
    auto dst = out.row(r);
    int o = 0;
    for (int c = 0; c < w; ++c) {
      for (int x = 0; x < ch; ++x) dst[o * ch + x] = src[c * ch + x];
      ++o;
      if (duplicated[static_cast<std::size_t>(r) * w + c]) {
        const int right = std::min(c + 1, w - 1);
        for (int x = 0; x < ch; ++x) {
          dst[o * ch + x] = 0.5f * (src[c * ch + x] + src[right * ch + x]);
        }
        ++o;
      }
    }
  }
  return out;
}

int insertion_cap(int extent) { return std::max(1, extent / 2); }

RasterImage carve_width(const RasterImage& image, int target_width) {
  if (target_width == image.width()) return image;
  if (target_width > image.width()) {
    RasterImage current = image;
    while (current.width() < target_width) {
      const int k = std::min(target_width - current.width(), insertion_cap(current.width()));
      current = insert_vertical(current, k);
    }
    return current;
  }
  const int ch = image.channels();
  const int h = image.height();
  int w = image.width();
  std::vector<float> buf(image.pixels().begin(), image.pixels().end());
  Plane lum = luminance(image);
  while (w > target_width) {
    const Seam seam = find_vertical_seam(energy_of(lum));
    remove_columns(buf, w, h, ch, seam.coords);
    remove_columns(lum.values, w, h, 1, seam.coords);
    --w;
    lum.width = w;
  }
  return RasterImage(w, h, ch, std::move(buf));
}

}  // namespace

EnergyMap transpose(const EnergyMap& energy) {
  EnergyMap out{energy.height, energy.width, std::vector<double>(energy.values.size())};
  for (int r = 0; r < energy.height; ++r) {
    for (int c = 0; c < energy.width; ++c) out.at(c, r) = energy.at(r, c);
  }
  return out;
}

EnergyMap energy_map(const RasterImage& image) { return energy_of(luminance(image)); }

Seam find_vertical_seam(const EnergyMap& energy) {
  const int w = energy.width;
  const int h = energy.height;
  if (w < 1 || h < 1) throw Error(ErrorCode::InvalidArgument, "empty energy map");

  std::vector<double> cost(energy.values.size());
  std::vector<int> parent(energy.values.size(), 0);
  std::copy(energy.values.begin(), energy.values.begin() + w, cost.begin());
  for (int r = 1; r < h; ++r) {
    const double* prev = cost.data() + static_cast<std::size_t>(r - 1) * w;
    double* cur = cost.data() + static_cast<std::size_t>(r) * w;
    int* par = parent.data() + static_cast<std::size_t>(r) * w;
    for (int c = 0; c < w; ++c) {
      int best = std::max(0, c - 1);
      const int last = std::min(w - 1, c + 1);
      for (int p = best + 1; p <= last; ++p) {
        if (prev[p] < prev[best]) best = p;
      }
      cur[c] = energy.at(r, c) + prev[best];
      par[c] = best;
    }
  }

  Seam seam{Orientation::Vertical, std::vector<int>(h)};
  const double* last_row = cost.data() + static_cast<std::size_t>(h - 1) * w;
  seam.coords[h - 1] = static_cast<int>(std::min_element(last_row, last_row + w) - last_row);
  for (int r = h - 1; r > 0; --r) {
    seam.coords[r - 1] = parent[static_cast<std::size_t>(r) * w + seam.coords[r]];
  }
  return seam;
}

Seam find_horizontal_seam(const EnergyMap& energy) {
  Seam seam = find_vertical_seam(transpose(energy));
  seam.orientation = Orientation::Horizontal;
  return seam;
}

double seam_energy(const EnergyMap& energy, const Seam& seam) {
  double total = 0.0;
  for (std::size_t i = 0; i < seam.coords.size(); ++i) {
    const int idx = static_cast<int>(i);
    total += seam.orientation == Orientation::Vertical ? energy.at(idx, seam.coords[i])
                                                       : energy.at(seam.coords[i], idx);
  }
  return total;
}

RasterImage remove_seam(const RasterImage& image, const Seam& seam) {
  check_seam(seam, image.width(), image.height());
  if (seam.orientation == Orientation::Vertical) return remove_vertical(image, seam.coords);
  return transpose(remove_vertical(transpose(image), seam.coords));
}

RasterImage insert_seams(const RasterImage& image, Orientation orientation, int k) {
  const int extent = orientation == Orientation::Vertical ? image.width() : image.height();
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "seam count must be >= 1");
  if (k > insertion_cap(extent)) {
    throw Error(ErrorCode::EnlargementTooLarge,
                std::to_string(k) + " seams exceed half of extent " + std::to_string(extent));
  }
  if (orientation == Orientation::Vertical) return insert_vertical(image, k);
  return transpose(insert_vertical(transpose(image), k));
}

RasterImage retarget_background(const RasterImage& image, const TargetSize& target) {
  target.validate();
  RasterImage out = carve_width(image, target.width);
  if (out.height() != target.height) out = transpose(carve_width(transpose(out), target.height));
  return out;
}

}  // namespace retarget
