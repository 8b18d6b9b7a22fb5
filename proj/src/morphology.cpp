#include "retarget/morphology.hpp"

#include <algorithm>
#include <vector>

#include "retarget/error.hpp"

namespace retarget {

namespace {

// Sliding-window OR along one line, via a prefix count.
void dilate_line(const std::vector<int>& in, std::vector<int>& out, int radius) {
  const int n = static_cast<int>(in.size());
  std::vector<int> prefix(n + 1, 0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + in[i];
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - radius);
    const int hi = std::min(n, i + radius + 1);
    out[i] = prefix[hi] - prefix[lo] > 0 ? 1 : 0;
  }
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "dilation radius must be >= 0");
  if (radius == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();

  std::vector<int> horizontal(static_cast<std::size_t>(w) * h);
  std::vector<int> line_in(w), line_out(w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) line_in[c] = mask.at(r, c) ? 1 : 0;
    dilate_line(line_in, line_out, radius);
    std::copy(line_out.begin(), line_out.end(), horizontal.begin() + static_cast<long>(r) * w);
  }

  BinaryMask out(w, h);
  std::vector<int> col_in(h), col_out(h);
  for (int c = 0; c < w; ++c) {
    for (int r = 0; r < h; ++r) col_in[r] = horizontal[static_cast<std::size_t>(r) * w + c];
    dilate_line(col_in, col_out, radius);
    for (int r = 0; r < h; ++r) out.set(r, c, col_out[r] != 0);
  }
  return out;
}

int default_dilation_radius(int width, int height) {
  const auto scaled = round_half_up(0.02 * std::min(width, height));
  return static_cast<int>(std::max<long long>(3, scaled));
}

}  // namespace retarget
