#ifndef MANGASEG_POSTPROCESS_HPP_
#define MANGASEG_POSTPROCESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <tuple>
#include <vector>

#include "mangaseg/components.hpp"
#include "mangaseg/grid.hpp"

namespace mangaseg
{

struct NoiseParams
{
  /// Components at least this large are kept unconditionally.
  std::int64_t good_area = 100;
  /// How far (in component enumeration order) to look for a good neighbour.
  int index_window = 15;
  int y_slack = 10;
  int x_slack = 20;

  void validate() const
  {
    if (good_area < 1 || index_window < 1 || y_slack < 1 || x_slack < 1) {
      throw InputError("noise parameters must all be positive");
    }
  }
};

/// Proximity-based noise removal.
///
/// Large components are good. A small component becomes good when a good
/// component close to it in enumeration order (raster order of first pixel)
/// lies within its box extents plus slack on both axes. Goodness spreads
/// transitively until a full sweep changes nothing; components that never
/// became good are erased.
inline BinaryMask remove_noise(const BinaryMask& mask, const NoiseParams& params = {})
{
  params.validate();
  const LabelMap labels = connected_components(mask);
  const auto stats = component_stats(labels);
  const int n = static_cast<int>(stats.size());

  std::vector<char> good(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) good[i] = stats[i].area >= params.good_area ? 1 : 0;

  auto center = [](const BBox& b) {
    return std::pair{b.x + b.w / 2.0, b.y + b.h / 2.0};
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (int idx = 0; idx < n; ++idx) {
      if (good[idx]) continue;
      const BBox& r = stats[idx].bbox;
      const auto [cx, cy] = center(r);
      // Half-open window [idx - w, idx + w).
      const int lo = std::max(idx - params.index_window, 0);
      const int hi = std::min(idx + params.index_window, n);
      for (int a = lo; a < hi; ++a) {
        if (a == idx || !good[a]) continue;
        const BBox& r2 = stats[a].bbox;
        const auto [cx2, cy2] = center(r2);
        const bool close_y = std::abs(cy2 - cy) < (r.h + r2.h) / 2.0 + params.y_slack;
        const bool close_x = std::abs(cx2 - cx) < (r.w + r2.w) / 2.0 + params.x_slack;
        if (close_y && close_x) {
          good[idx] = 1;
          changed = true;
          break;
        }
      }
    }
  }

  BinaryMask out = mask;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 0 && !good[static_cast<std::size_t>(labels[i] - 1)]) out[i] = 0;
  }
  return out;
}

namespace detail
{

/// 1-D Gaussian weights for a block, quantised to 16-bit fixed point, with
/// sigma = 0.3 * ((block - 1) / 2 - 1) + 0.8.
inline std::vector<std::int64_t> gaussian_weights_q16(int block_size)
{
  const double sigma = 0.3 * ((block_size - 1) * 0.5 - 1.0) + 0.8;
  const int half = block_size / 2;
  std::vector<double> k(static_cast<std::size_t>(block_size));
  double sum = 0.0;
  for (int i = 0; i < block_size; ++i) {
    const double d = i - half;
    k[i] = std::exp(-(d * d) / (2.0 * sigma * sigma));
    sum += k[i];
  }
  std::vector<std::int64_t> w(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) w[i] = std::llround(k[i] / sum * 65536.0);
  return w;
}

} // namespace detail

/// Local Gaussian-mean threshold: foreground iff
///   pixel > gaussian_mean(block x block, replicated border) - offset_c.
/// Weights are fixed point and the comparison is done in integers, so the
/// result does not depend on summation order.
inline BinaryMask adaptive_threshold(const GrayImage& gray, int block_size = 15, int offset_c = 30)
{
  if (block_size < 3 || block_size % 2 == 0) {
    throw InputError("adaptive threshold block size must be odd and >= 3");
  }
  const int w = gray.width();
  const int h = gray.height();
  const int half = block_size / 2;
  const auto k = detail::gaussian_weights_q16(block_size);
  std::int64_t ksum = 0;
  for (auto v : k) ksum += v;
  const std::int64_t norm = ksum * ksum;

  auto clampi = [](int v, int hi) { return v < 0 ? 0 : (v > hi ? hi : v); };

  std::vector<std::int64_t> rows(gray.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t s = 0;
      for (int i = 0; i < block_size; ++i) s += k[i] * gray(clampi(x + i - half, w - 1), y);
      rows[gray.index(x, y)] = s;
    }
  }

  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      std::int64_t s = 0;
      for (int i = 0; i < block_size; ++i) {
        s += k[i] * rows[gray.index(x, clampi(y + i - half, h - 1))];
      }
      const std::int64_t lhs = (static_cast<std::int64_t>(gray(x, y)) + offset_c) * norm;
      out.set(x, y, lhs > s);
    }
  }
  return out;
}

struct ExpandParams
{
  int block_size = 15;
  int offset_c = 30;
  /// Boxes holding this many components or more contribute nothing.
  int max_components = 10;
  /// Components must be strictly larger than this.
  std::int64_t min_area = 3;
  /// Mask overlap must strictly exceed this fraction of the component area.
  double min_overlap_frac = 0.10;

  void validate() const
  {
    if (block_size < 3 || block_size % 2 == 0) {
      throw InputError("block_size must be odd and >= 3");
    }
    if (!(min_overlap_frac > 0.0 && min_overlap_frac < 1.0)) {
      throw InputError("min_overlap_frac must lie in (0, 1)");
    }
    if (max_components < 1 || min_area < 0) throw InputError("invalid expand parameters");
  }
};

/// Boxes of every contour of a thresholded image: outer borders of the
/// 8-connected foreground components, and borders of enclosed background
/// holes (4-connected background regions not touching the raster edge). A
/// hole's border runs over the foreground pixels around it, so its box is the
/// hole's bounding box grown by one pixel.
inline std::vector<BBox> threshold_boxes(const BinaryMask& thresh)
{
  std::set<std::tuple<int, int, int, int>> seen;
  std::vector<BBox> boxes;
  auto add = [&](const BBox& b) {
    if (seen.emplace(b.y, b.x, b.h, b.w).second) boxes.push_back(b);
  };

  for (const auto& s : component_stats(connected_components(thresh))) add(s.bbox);

  const int w = thresh.width();
  const int h = thresh.height();
  std::vector<char> visited(thresh.size(), 0);
  std::vector<std::size_t> stack;
  for (int sy = 0; sy < h; ++sy) {
    for (int sx = 0; sx < w; ++sx) {
      const std::size_t start = thresh.index(sx, sy);
      if (thresh[start] || visited[start]) continue;
      int x0 = sx, y0 = sy, x1 = sx, y1 = sy;
      bool touches_edge = false;
      visited[start] = 1;
      stack.assign(1, start);
      while (!stack.empty()) {
        const std::size_t p = stack.back();
        stack.pop_back();
        const int px = static_cast<int>(p % static_cast<std::size_t>(w));
        const int py = static_cast<int>(p / static_cast<std::size_t>(w));
        x0 = std::min(x0, px);
        x1 = std::max(x1, px);
        y0 = std::min(y0, py);
        y1 = std::max(y1, py);
        if (px == 0 || py == 0 || px == w - 1 || py == h - 1) touches_edge = true;
        const int nx[4] = {px - 1, px + 1, px, px};
        const int ny[4] = {py, py, py - 1, py + 1};
        for (int k = 0; k < 4; ++k) {
          if (!thresh.contains(nx[k], ny[k])) continue;
          const std::size_t q = thresh.index(nx[k], ny[k]);
          if (thresh[q] || visited[q]) continue;
          visited[q] = 1;
          stack.push_back(q);
        }
      }
      if (!touches_edge) add({x0 - 1, y0 - 1, x1 - x0 + 3, y1 - y0 + 3});
    }
  }
  return boxes;
}

inline GrayImage crop(const GrayImage& img, const BBox& b)
{
  GrayImage out(b.w, b.h);
  for (int y = 0; y < b.h; ++y) {
    for (int x = 0; x < b.w; ++x) out(x, y) = img(b.x + x, b.y + y);
  }
  return out;
}

/// Expands partially detected glyphs to whole threshold components.
///
/// The page is adaptively thresholded and every contour box is re-thresholded
/// on its own crop and inverted, so dark strokes become foreground. In a box
/// with fewer than `max_components` components, each component larger than
/// `min_area` whose overlap with `mask` exceeds `min_overlap_frac` of its area
/// is painted whole. Returns only the painted pixels.
inline BinaryMask expand_partial(const GrayImage& gray, const BinaryMask& mask,
                                 const ExpandParams& params = {})
{
  detail::require_same_size(gray, mask, "expand_partial");
  params.validate();
  BinaryMask out(gray.width(), gray.height());
  const BinaryMask page = adaptive_threshold(gray, params.block_size, params.offset_c);

  for (const BBox& box : threshold_boxes(page)) {
    const BinaryMask local = adaptive_threshold(crop(gray, box), params.block_size, params.offset_c);
    const BinaryMask strokes = mask_where(local, [](std::uint8_t v) { return v == 0; });
    const LabelMap labels = connected_components(strokes);
    if (labels.n_components() >= params.max_components) continue;

    const auto n = static_cast<std::size_t>(labels.n_components());
    std::vector<std::int64_t> area(n + 1, 0), overlap(n + 1, 0);
    for (int y = 0; y < box.h; ++y) {
      for (int x = 0; x < box.w; ++x) {
        const auto l = static_cast<std::size_t>(labels(x, y));
        if (l == 0) continue;
        ++area[l];
        if (mask.at(box.x + x, box.y + y)) ++overlap[l];
      }
    }
    for (int y = 0; y < box.h; ++y) {
      for (int x = 0; x < box.w; ++x) {
        const auto l = static_cast<std::size_t>(labels(x, y));
        if (l == 0) continue;
        if (area[l] > params.min_area &&
            static_cast<double>(overlap[l]) > static_cast<double>(area[l]) * params.min_overlap_frac) {
          out.set(box.x + x, box.y + y, true);
        }
      }
    }
  }
  return out;
}

} // namespace mangaseg

#endif
