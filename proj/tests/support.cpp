#include "support.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace testing {

RasterImage random_image(int width, int height, int channels, std::mt19937_64& rng, bool quantized) {
  RasterImage img(width, height, channels);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_real_distribution<float> unit(0.0f, 1.0f);
  for (auto& v : img.pixels()) v = quantized ? static_cast<float>(byte(rng)) / 255.0f : unit(rng);
  return img;
}

BinaryMask random_mask(int width, int height, double density, std::mt19937_64& rng) {
  BinaryMask m(width, height);
  std::bernoulli_distribution bit(density);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) m.set(r, c, bit(rng));
  }
  return m;
}

EnergyMap random_energy(int width, int height, std::mt19937_64& rng) {
  EnergyMap e{width, height, std::vector<double>(static_cast<std::size_t>(width) * height)};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& v : e.values) v = unit(rng);
  return e;
}

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_chunk(std::vector<std::uint8_t>& out, const char* type, const std::vector<std::uint8_t>& data) {
  put_u32(out, static_cast<std::uint32_t>(data.size()));
  std::vector<std::uint8_t> body(type, type + 4);
  body.insert(body.end(), data.begin(), data.end());
  out.insert(out.end(), body.begin(), body.end());
  put_u32(out, static_cast<std::uint32_t>(crc32(0L, body.data(), static_cast<uInt>(body.size()))));
}

}  // namespace

std::vector<std::uint8_t> encode_png_reference(int width, int height, int channels,
                                               const std::vector<std::uint8_t>& samples) {
  const std::uint8_t color_type = channels == 1 ? 0 : channels == 3 ? 2 : 6;
  std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  std::vector<std::uint8_t> ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(width));
  put_u32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.insert(ihdr.end(), {8, color_type, 0, 0, 0});
  put_chunk(out, "IHDR", ihdr);

  std::vector<std::uint8_t> raw;
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (int r = 0; r < height; ++r) {
    raw.push_back(0);
    raw.insert(raw.end(), samples.begin() + static_cast<long>(r * stride),
               samples.begin() + static_cast<long>((r + 1) * stride));
  }
  uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> packed(packed_size);
  if (compress(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size())) != Z_OK) {
    throw std::runtime_error("zlib compress failed");
  }
  packed.resize(packed_size);
  put_chunk(out, "IDAT", packed);
  put_chunk(out, "IEND", {});
  return out;
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

double brute_force_min_vertical_seam(const EnergyMap& energy) {
  double best = std::numeric_limits<double>::infinity();
  std::function<void(int, int, double)> walk = [&](int row, int col, double acc) {
    acc = acc + energy.at(row, col);
    if (row == energy.height - 1) {
      best = std::min(best, acc);
      return;
    }
    for (int d = -1; d <= 1; ++d) {
      const int next = col + d;
      if (next >= 0 && next < energy.width) walk(row + 1, next, acc);
    }
  };
  for (int c = 0; c < energy.width; ++c) walk(0, c, 0.0);
  return best;
}

BinaryMask brute_force_dilate(const BinaryMask& mask, int radius) {
  BinaryMask out(mask.width(), mask.height());
  for (int r = 0; r < mask.height(); ++r) {
    for (int c = 0; c < mask.width(); ++c) {
      bool hit = false;
      for (int rr = 0; rr < mask.height() && !hit; ++rr) {
        for (int cc = 0; cc < mask.width() && !hit; ++cc) {
          hit = mask.at(rr, cc) && std::max(std::abs(rr - r), std::abs(cc - c)) <= radius;
        }
      }
      out.set(r, c, hit);
    }
  }
  return out;
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a[i * n + k]) > std::abs(a[pivot * n + k])) pivot = i;
    }
    for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[pivot * n + j]);
    std::swap(b[k], b[pivot]);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a[i * n + k] / a[k * n + k];
      for (std::size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = b[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= a[k * n + j] * x[j];
    x[k] = s / a[k * n + k];
  }
  return x;
}

RasterImage harmonic_fill_oracle(const RasterImage& image, const BinaryMask& hole) {
  std::vector<std::pair<int, int>> unknowns;
  std::vector<int> index(static_cast<std::size_t>(image.width()) * image.height(), -1);
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      if (!hole.at(r, c)) continue;
      index[static_cast<std::size_t>(r) * image.width() + c] = static_cast<int>(unknowns.size());
      unknowns.emplace_back(r, c);
    }
  }
  const std::size_t n = unknowns.size();
  RasterImage out = image;
  for (int ch = 0; ch < image.channels(); ++ch) {
    std::vector<double> a(n * n, 0.0), b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto [r, c] = unknowns[i];
      const int dr[] = {-1, 1, 0, 0};
      const int dc[] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k) {
        const int rr = r + dr[k];
        const int cc = c + dc[k];
        if (rr < 0 || cc < 0 || rr >= image.height() || cc >= image.width()) continue;
        a[i * n + i] += 1.0;
        const int j = index[static_cast<std::size_t>(rr) * image.width() + cc];
        if (j >= 0) a[i * n + j] -= 1.0;
        else b[i] += image.at(rr, cc, ch);
      }
    }
    const auto x = solve_dense(a, b);
    for (std::size_t i = 0; i < n; ++i) {
      out.at(unknowns[i].first, unknowns[i].second, ch) = static_cast<float>(x[i]);
    }
  }
  return out;
}

EnergyMap brute_force_energy(const RasterImage& image) {
  const int w = image.width();
  const int h = image.height();
  auto lum = [&](int r, int c) {
    return (static_cast<double>(image.at(r, c, 0)) + image.at(r, c, 1) + image.at(r, c, 2)) / 3.0;
  };
  EnergyMap e{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double gx = 0.0, gy = 0.0;
      if (w > 1) {
        const int left = std::max(c - 1, 0), right = std::min(c + 1, w - 1);
        gx = (lum(r, right) - lum(r, left)) / (right - left);
      }
      if (h > 1) {
        const int up = std::max(r - 1, 0), down = std::min(r + 1, h - 1);
        gy = (lum(down, c) - lum(up, c)) / (down - up);
      }
      e.at(r, c) = std::abs(gx) + std::abs(gy);
    }
  }
  return e;
}

namespace {

double source_coord(int d, int src, int dst) {
  const double s = (d + 0.5) * src / dst - 0.5;
  return std::min(std::max(s, 0.0), static_cast<double>(src - 1));
}

double keys(double x) {
  x = std::abs(x);
  const double a = -0.5;
  if (x <= 1) return (a + 2) * x * x * x - (a + 3) * x * x + 1;
  if (x < 2) return a * x * x * x - 5 * a * x * x + 8 * a * x - 4 * a;
  return 0;
}

}  // namespace

RasterImage naive_bilinear(const RasterImage& image, int new_width, int new_height) {
  RasterImage out(new_width, new_height, image.channels());
  for (int r = 0; r < new_height; ++r) {
    const double sy = source_coord(r, image.height(), new_height);
    const int y0 = static_cast<int>(std::floor(sy));
    const int y1 = std::min(y0 + 1, image.height() - 1);
    const double ty = sy - y0;
    for (int c = 0; c < new_width; ++c) {
      const double sx = source_coord(c, image.width(), new_width);
      const int x0 = static_cast<int>(std::floor(sx));
      const int x1 = std::min(x0 + 1, image.width() - 1);
      const double tx = sx - x0;
      for (int k = 0; k < image.channels(); ++k) {
        const double top = image.at(y0, x0, k) * (1 - tx) + image.at(y0, x1, k) * tx;
        const double bottom = image.at(y1, x0, k) * (1 - tx) + image.at(y1, x1, k) * tx;
        out.at(r, c, k) = static_cast<float>(top * (1 - ty) + bottom * ty);
      }
    }
  }
  return out;
}

RasterImage naive_bicubic(const RasterImage& image, int new_width, int new_height) {
  RasterImage out(new_width, new_height, image.channels());
  for (int r = 0; r < new_height; ++r) {
    const double sy = source_coord(r, image.height(), new_height);
    const int y0 = static_cast<int>(std::floor(sy));
    for (int c = 0; c < new_width; ++c) {
      const double sx = source_coord(c, image.width(), new_width);
      const int x0 = static_cast<int>(std::floor(sx));
      for (int k = 0; k < image.channels(); ++k) {
        double acc = 0.0;
        for (int j = y0 - 1; j <= y0 + 2; ++j) {
          for (int i = x0 - 1; i <= x0 + 2; ++i) {
            const int yy = std::clamp(j, 0, image.height() - 1);
            const int xx = std::clamp(i, 0, image.width() - 1);
            acc += keys(sy - j) * keys(sx - i) * image.at(yy, xx, k);
          }
        }
        out.at(r, c, k) = static_cast<float>(std::clamp(acc, 0.0, 1.0));
      }
    }
  }
  return out;
}

double max_abs_diff(const RasterImage& a, const RasterImage& b) {
  if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels()) {
    return std::numeric_limits<double>::infinity();
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.pixels().size(); ++i) {
    m = std::max(m, static_cast<double>(std::abs(a.pixels()[i] - b.pixels()[i])));
  }
  return m;
}

Scene rectangle_scene(int width, int height, retarget::Footprint object, float background,
                      float foreground) {
  Scene s{RasterImage(width, height, 3, background), BinaryMask(width, height)};
  for (int r = object.row; r < object.row + object.height; ++r) {
    for (int c = object.col; c < object.col + object.width; ++c) {
      for (int k = 0; k < 3; ++k) s.image.at(r, c, k) = foreground;
      s.mask.set(r, c, true);
    }
  }
  return s;
}

Scene textured_scene(int width, int height, retarget::Footprint object, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 6.283);
  const double p1 = phase(rng), p2 = phase(rng), p3 = phase(rng);
  Scene s{RasterImage(width, height, 3), BinaryMask(width, height)};
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const double u = static_cast<double>(c) / width;
      const double v = static_cast<double>(r) / height;
      s.image.at(r, c, 0) = static_cast<float>(0.5 + 0.3 * std::sin(6.0 * u + p1));
      s.image.at(r, c, 1) = static_cast<float>(0.5 + 0.3 * std::sin(5.0 * v + p2));
      s.image.at(r, c, 2) = static_cast<float>(0.5 + 0.2 * std::sin(4.0 * (u + v) + p3));
    }
  }
  for (int r = object.row; r < object.row + object.height; ++r) {
    for (int c = object.col; c < object.col + object.width; ++c) {
      const bool check = ((r / 3) + (c / 3)) % 2 == 0;
      s.image.at(r, c, 0) = check ? 0.9f : 0.2f;
      s.image.at(r, c, 1) = 0.1f;
      s.image.at(r, c, 2) = check ? 0.1f : 0.8f;
      s.mask.set(r, c, true);
    }
  }
  return s;
}

double grid_oracle_best(const retarget::PlacementProblem& problem, int n_xy, int n_size) {
  const auto& b = problem.bounds();
  auto lattice = [](double lo, double hi, int i, int n) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_xy; ++i) {
    for (int j = 0; j < n_xy; ++j) {
      for (int k = 0; k < n_size; ++k) {
        const std::vector<double> v{lattice(b.lower[0], b.upper[0], i, n_xy),
                                    lattice(b.lower[1], b.upper[1], j, n_xy),
                                    lattice(b.lower[2], b.upper[2], k, n_size)};
        best = std::max(best, problem.fitness(v));
      }
    }
  }
  return best;
}

}  // namespace testing
