#include "retarget/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "retarget/error.hpp"

namespace retarget {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::uint8_t, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

std::vector<std::uint8_t> read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool looks_like_png(const std::vector<std::uint8_t>& bytes) {
  const std::size_t n = std::min(bytes.size(), kPngSignature.size());
  return n > 0 && std::equal(bytes.begin(), bytes.begin() + static_cast<long>(n), kPngSignature.begin());
}

RasterImage decode_png(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, bytes.data(), bytes.size())) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::CorruptData, path.string() + ": " + msg);
  }
  const bool alpha = (img.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  img.format = alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  const int channels = alpha ? 4 : 3;
  const int width = static_cast<int>(img.width);
  const int height = static_cast<int>(img.height);
  std::vector<std::uint8_t> raw(PNG_IMAGE_SIZE(img));
  if (!png_image_finish_read(&img, nullptr, raw.data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::CorruptData, path.string() + ": " + msg);
  }
  std::vector<float> pixels(raw.size());
  std::transform(raw.begin(), raw.end(), pixels.begin(),
                 [](std::uint8_t v) { return static_cast<float>(v) / 255.0f; });
  return RasterImage(width, height, channels, std::move(pixels));
}

// Binary PNM header: magic, width, height, maxval separated by whitespace and
// '#' comments, followed by exactly one whitespace byte before the raster.
RasterImage decode_pnm(const std::vector<std::uint8_t>& bytes, const fs::path& path) {
  std::size_t pos = 2;
  auto next_int = [&]() -> long {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw Error(ErrorCode::CorruptData, path.string() + ": malformed PNM header");
    }
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos] - '0');
      if (v > (1L << 24)) throw Error(ErrorCode::CorruptData, path.string() + ": PNM field too large");
      ++pos;
    }
    return v;
  };
  const bool gray = bytes[1] == '5';
  const long width = next_int();
  const long height = next_int();
  const long maxval = next_int();
  if (width < 1 || height < 1 || maxval < 1) {
    throw Error(ErrorCode::CorruptData, path.string() + ": invalid PNM dimensions");
  }
  if (maxval > 255) {
    throw Error(ErrorCode::UnsupportedFormat, path.string() + ": 16-bit PNM is not supported");
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw Error(ErrorCode::CorruptData, path.string() + ": malformed PNM header");
  }
  ++pos;
  const std::size_t samples = static_cast<std::size_t>(width) * height * (gray ? 1 : 3);
  if (bytes.size() - pos < samples) {
    throw Error(ErrorCode::CorruptData, path.string() + ": truncated PNM raster");
  }
  const float maxv = static_cast<float>(maxval);
  std::vector<float> pixels(static_cast<std::size_t>(width) * height * 3);
  for (std::size_t i = 0; i < static_cast<std::size_t>(width) * height; ++i) {
    for (int k = 0; k < 3; ++k) {
      const std::uint8_t v = gray ? bytes[pos + i] : bytes[pos + 3 * i + k];
      pixels[3 * i + k] = std::min(1.0f, static_cast<float>(v) / maxv);
    }
  }
  return RasterImage(static_cast<int>(width), static_cast<int>(height), 3, std::move(pixels));
}

std::string lower_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return ext;
}

void write_pnm(const std::vector<std::uint8_t>& samples, int width, int height, bool gray,
               const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << (gray ? "P5" : "P6") << '\n' << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(samples.data()), static_cast<std::streamsize>(samples.size()));
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

void write_png(const std::vector<std::uint8_t>& samples, int width, int height,
               png_uint_32 format, const fs::path& path) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(width);
  img.height = static_cast<png_uint_32>(height);
  img.format = format;
  if (!png_image_write_to_file(&img, path.c_str(), 0, samples.data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw Error(ErrorCode::IoError, path.string() + ": " + msg);
  }
}

}  // namespace

std::uint8_t quantize(float v) {
  const double scaled = std::floor(static_cast<double>(v) * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

RasterImage load_image(const fs::path& path) {
  const auto bytes = read_file(path);
  if (bytes.empty()) throw Error(ErrorCode::CorruptData, path.string() + ": empty file");
  if (looks_like_png(bytes)) return decode_png(bytes, path);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) {
    return decode_pnm(bytes, path);
  }
  throw Error(ErrorCode::UnsupportedFormat, path.string());
}

void save_image(const RasterImage& image, const fs::path& path) {
  const std::string ext = lower_extension(path);
  const auto px = image.pixels();
  const std::size_t count = static_cast<std::size_t>(image.width()) * image.height();
  const int ch = image.channels();
  if (ext == ".ppm" || ext == ".pgm") {
    const bool gray = ext == ".pgm";
    std::vector<std::uint8_t> samples(count * (gray ? 1 : 3));
    for (std::size_t i = 0; i < count; ++i) {
      if (gray) {
        const float mean = (px[i * ch] + px[i * ch + 1] + px[i * ch + 2]) / 3.0f;
        samples[i] = quantize(mean);
      } else {
        for (int k = 0; k < 3; ++k) samples[3 * i + k] = quantize(px[i * ch + k]);
      }
    }
    write_pnm(samples, image.width(), image.height(), gray, path);
    return;
  }
  std::vector<std::uint8_t> samples(px.size());
  std::transform(px.begin(), px.end(), samples.begin(), quantize);
  write_png(samples, image.width(), image.height(), ch == 4 ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB,
            path);
}

BinaryMask load_mask(const fs::path& path) {
  const RasterImage image = load_image(path);
  BinaryMask mask(image.width(), image.height());
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      const float mean = (image.at(r, c, 0) + image.at(r, c, 1) + image.at(r, c, 2)) / 3.0f;
      mask.set(r, c, mean > 0.5f);
    }
  }
  return mask;
}

void save_mask(const BinaryMask& mask, const fs::path& path) {
  std::vector<std::uint8_t> samples(mask.bits().size());
  std::transform(mask.bits().begin(), mask.bits().end(), samples.begin(),
                 [](std::uint8_t b) -> std::uint8_t { return b ? 255 : 0; });
  write_png(samples, mask.width(), mask.height(), PNG_FORMAT_GRAY, path);
}

}  // namespace retarget
