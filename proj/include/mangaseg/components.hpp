#ifndef MANGASEG_COMPONENTS_HPP_
#define MANGASEG_COMPONENTS_HPP_

#include <cstdint>
#include <numeric>
#include <vector>

#include "mangaseg/grid.hpp"

namespace mangaseg
{

struct BBox
{
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend bool operator==(const BBox&, const BBox&) = default;
};

struct ComponentStats
{
  int label = 0;
  std::int64_t area = 0;
  BBox bbox;

  friend bool operator==(const ComponentStats&, const ComponentStats&) = default;
};

namespace detail
{

class DisjointSet
{
public:
  std::int32_t make()
  {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }

  std::int32_t find(std::int32_t a)
  {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }

  // Keeps the smaller root so the root is always the provisional label seen
  // first in raster order.
  void unite(std::int32_t a, std::int32_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

private:
  std::vector<std::int32_t> parent_;
};

} // namespace detail

/// Labels maximal 8-connected foreground regions. Labels are assigned in
/// raster order of each component's first (topmost, then leftmost) pixel.
inline LabelMap connected_components(const BinaryMask& mask)
{
  const int w = mask.width();
  const int h = mask.height();
  LabelMap out(w, h);
  detail::DisjointSet sets;
  sets.make(); // slot 0 = background

  // Pass 1: provisional labels from the already-visited half of the
  // 8-neighbourhood (W, NW, N, NE).
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y)) continue;
      std::int32_t label = 0;
      const int nx[4] = {x - 1, x - 1, x, x + 1};
      const int ny[4] = {y, y - 1, y - 1, y - 1};
      for (int k = 0; k < 4; ++k) {
        if (!out.contains(nx[k], ny[k])) continue;
        const std::int32_t n = out(nx[k], ny[k]);
        if (n == 0) continue;
        if (label == 0) label = n;
        else sets.unite(label, n);
      }
      if (label == 0) label = sets.make();
      out(x, y) = label;
    }
  }

  // Pass 2: compact roots to 1..n in order of first appearance.
  std::vector<std::int32_t> compact(sets.size(), 0);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == 0) continue;
    const std::int32_t root = sets.find(out[i]);
    if (compact[root] == 0) compact[root] = ++next;
    out[i] = compact[root];
  }
  out.set_n_components(next);
  return out;
}

/// One entry per positive label, sorted by label.
inline std::vector<ComponentStats> component_stats(const LabelMap& labels)
{
  const int n = labels.n_components();
  std::vector<ComponentStats> stats(static_cast<std::size_t>(n));
  std::vector<int> x0(n, labels.width()), y0(n, labels.height()), x1(n, -1), y1(n, -1);
  for (int y = 0; y < labels.height(); ++y) {
    for (int x = 0; x < labels.width(); ++x) {
      const std::int32_t l = labels(x, y);
      if (l <= 0) continue;
      const auto k = static_cast<std::size_t>(l - 1);
      stats[k].area += 1;
      x0[k] = std::min(x0[k], x);
      y0[k] = std::min(y0[k], y);
      x1[k] = std::max(x1[k], x);
      y1[k] = std::max(y1[k], y);
    }
  }
  for (int k = 0; k < n; ++k) {
    stats[k].label = k + 1;
    stats[k].bbox = {x0[k], y0[k], x1[k] - x0[k] + 1, y1[k] - y0[k] + 1};
  }
  return stats;
}

/// Pixel indices of every component, grouped by label (entry k = label k+1),
/// each list in raster order.
inline std::vector<std::vector<std::int32_t>> component_pixels(const LabelMap& labels)
{
  std::vector<std::vector<std::int32_t>> out(static_cast<std::size_t>(labels.n_components()));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] > 0) out[static_cast<std::size_t>(labels[i] - 1)].push_back(static_cast<std::int32_t>(i));
  }
  return out;
}

} // namespace mangaseg

#endif
