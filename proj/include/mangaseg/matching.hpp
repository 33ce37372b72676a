#ifndef MANGASEG_MATCHING_HPP_
#define MANGASEG_MATCHING_HPP_

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mangaseg/components.hpp"
#include "mangaseg/grid.hpp"
#include "mangaseg/morphology.hpp"

namespace mangaseg
{

/// Pixel sets of ground-truth components under one view (original, eroded
/// or dilated). Entry k belongs to label k+1 and holds raster indices in
/// ascending order. Sets of different labels may overlap: per-component
/// dilations are not clipped against each other.
struct ComponentViews
{
  int width_ = 0;
  int height_ = 0;
  std::vector<std::vector<std::int32_t>> pixels;
  /// Labels whose view fell back to the original component because the
  /// morphology left nothing (only set by eroded_views).
  std::vector<int> fallback_labels;

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int size() const noexcept { return static_cast<int>(pixels.size()); }
};

inline ComponentViews views_from_labels(const LabelMap& labels)
{
  return {labels.width(), labels.height(), component_pixels(labels), {}};
}

namespace detail
{

// Crop of a single component, padded by `pad` pixels on each side (clipped
// to the raster).
struct ComponentCrop
{
  int x0 = 0;
  int y0 = 0;
  BinaryMask mask{1, 1};
};

inline ComponentCrop crop_component(const LabelMap& labels, const ComponentStats& s, int pad)
{
  const int x0 = std::max(0, s.bbox.x - pad);
  const int y0 = std::max(0, s.bbox.y - pad);
  const int x1 = std::min(labels.width(), s.bbox.x + s.bbox.w + pad);
  const int y1 = std::min(labels.height(), s.bbox.y + s.bbox.h + pad);
  ComponentCrop c{x0, y0, BinaryMask(x1 - x0, y1 - y0)};
  for (int y = s.bbox.y; y < s.bbox.y + s.bbox.h; ++y) {
    for (int x = s.bbox.x; x < s.bbox.x + s.bbox.w; ++x) {
      if (labels(x, y) == s.label) c.mask.set(x - x0, y - y0, true);
    }
  }
  return c;
}

inline std::vector<std::int32_t> uncrop(const ComponentCrop& c, const BinaryMask& local, int width)
{
  std::vector<std::int32_t> out;
  for (int y = 0; y < local.height(); ++y) {
    for (int x = 0; x < local.width(); ++x) {
      if (local.at(x, y)) out.push_back((c.y0 + y) * width + (c.x0 + x));
    }
  }
  return out;
}

} // namespace detail

/// Per-component erosion. A component eroded to nothing keeps its original
/// pixels and is listed in fallback_labels, so thin strokes stay matchable.
inline ComponentViews eroded_views(const LabelMap& labels, int iterations)
{
  ComponentViews v{labels.width(), labels.height(), {}, {}};
  for (const auto& s : component_stats(labels)) {
    // Everything outside the bbox is background for this component, so
    // eroding the tight crop equals eroding it on the full raster.
    const auto padded = detail::crop_component(labels, s, 0);
    auto eroded = detail::uncrop(padded, erode(padded.mask, iterations), labels.width());
    if (eroded.empty()) {
      v.fallback_labels.push_back(s.label);
      eroded = detail::uncrop(padded, padded.mask, labels.width());
    }
    v.pixels.push_back(std::move(eroded));
  }
  return v;
}

/// Per-component dilation; neighbouring components keep separate identities
/// even where their dilations overlap.
inline ComponentViews dilated_views(const LabelMap& labels, int iterations)
{
  ComponentViews v{labels.width(), labels.height(), {}, {}};
  for (const auto& s : component_stats(labels)) {
    const auto padded = detail::crop_component(labels, s, iterations);
    v.pixels.push_back(
      detail::uncrop(padded, dilate(padded.mask, iterations), labels.width()));
  }
  return v;
}

/// Assigns every prediction pixel to at most one ground-truth label.
///
/// Prediction pixels lying on a GT component are seeds carrying its label.
/// Labels then flood through the prediction foreground only, one 8-connected
/// hop per level; a pixel reached at the same level by several labels takes
/// the smallest. Prediction regions no seed can reach stay 0.
inline LabelMap watershed_assign(const LabelMap& gt_labels, const BinaryMask& pred)
{
  detail::require_same_size(gt_labels, pred, "watershed_assign");
  const int w = pred.width();
  const int h = pred.height();
  LabelMap out(w, h);
  out.set_n_components(gt_labels.n_components());

  std::vector<std::int32_t> level(pred.size(), -1);
  std::vector<std::int32_t> frontier;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] && gt_labels[i] > 0) {
      out[i] = gt_labels[i];
      level[i] = 0;
      frontier.push_back(static_cast<std::int32_t>(i));
    }
  }

  std::int32_t depth = 0;
  std::vector<std::int32_t> next;
  while (!frontier.empty()) {
    next.clear();
    for (const std::int32_t p : frontier) {
      const int px = p % w;
      const int py = p / w;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int qx = px + dx;
          const int qy = py + dy;
          if (!pred.contains(qx, qy)) continue;
          const std::size_t q = pred.index(qx, qy);
          if (!pred[q]) continue;
          if (level[q] == -1) {
            level[q] = depth + 1;
            out[q] = out[p];
            next.push_back(static_cast<std::int32_t>(q));
          } else if (level[q] == depth + 1 && out[p] < out[q]) {
            out[q] = out[p];
          }
        }
      }
    }
    frontier.swap(next);
    ++depth;
  }
  return out;
}

struct GtMatch
{
  int gt_label = 0;
  bool matched = false;
  /// |acc view of G_i ∩ D_i|: numerator of acc.
  std::int64_t intersection_area = 0;
  /// |D_i|: prediction pixels watershed-assigned to this component.
  std::int64_t assigned_pred_area = 0;
  /// |cov view of G_i ∩ D_i| and |cov view of G_i|.
  std::int64_t cov_intersection_area = 0;
  std::int64_t cov_area = 0;
  /// Both are 0 for unmatched components.
  double cov = 0.0;
  double acc = 0.0;
};

struct MatchResult
{
  std::vector<GtMatch> per_gt;
  int tp = 0;
  int fp = 0;
  /// Ground-truth components.
  int m = 0;
  /// Prediction components.
  int n_detections = 0;
};

namespace detail
{

inline void require_views(const ComponentViews& v, const LabelMap& gt, const char* what)
{
  detail::require_same_size(gt, v, what);
  if (v.size() != gt.n_components()) {
    throw InputError(std::string(what) + ": view has " + std::to_string(v.size()) +
                     " components, ground truth has " + std::to_string(gt.n_components()));
  }
}

inline std::int64_t count_assigned(const std::vector<std::int32_t>& pixels,
                                   const LabelMap& assignment, std::int32_t label)
{
  std::int64_t n = 0;
  for (const auto p : pixels) n += assignment[static_cast<std::size_t>(p)] == label ? 1 : 0;
  return n;
}

} // namespace detail

/// Matches a prediction against ground truth given an existing watershed
/// assignment. A component is matched iff its assigned region touches its
/// match-test view.
inline MatchResult match_assigned(const LabelMap& gt, const ComponentViews& gt_for_cov,
                                  const ComponentViews& gt_for_acc, const BinaryMask& pred,
                                  const ComponentViews& match_test, const LabelMap& assignment)
{
  detail::require_same_size(gt, pred, "match");
  detail::require_same_size(gt, assignment, "match");
  detail::require_views(gt_for_cov, gt, "match");
  detail::require_views(gt_for_acc, gt, "match");
  detail::require_views(match_test, gt, "match");

  MatchResult r;
  r.m = gt.n_components();

  std::vector<std::int64_t> assigned_area(static_cast<std::size_t>(r.m) + 1, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] > 0) ++assigned_area[static_cast<std::size_t>(assignment[i])];
  }

  for (int k = 0; k < r.m; ++k) {
    const std::int32_t label = k + 1;
    GtMatch g;
    g.gt_label = label;
    g.assigned_pred_area = assigned_area[static_cast<std::size_t>(label)];
    g.matched = detail::count_assigned(match_test.pixels[k], assignment, label) > 0;
    g.intersection_area = detail::count_assigned(gt_for_acc.pixels[k], assignment, label);
    g.cov_intersection_area = detail::count_assigned(gt_for_cov.pixels[k], assignment, label);
    g.cov_area = static_cast<std::int64_t>(gt_for_cov.pixels[k].size());
    if (g.matched) {
      ++r.tp;
      g.acc = static_cast<double>(g.intersection_area) / static_cast<double>(g.assigned_pred_area);
      g.cov = g.cov_area > 0 ? static_cast<double>(g.cov_intersection_area) /
                                 static_cast<double>(g.cov_area)
                             : 0.0;
    }
    r.per_gt.push_back(g);
  }

  // A detection is a false positive only when none of its pixels was
  // assigned to any component.
  const LabelMap det = connected_components(pred);
  r.n_detections = det.n_components();
  std::vector<char> touched(static_cast<std::size_t>(r.n_detections) + 1, 0);
  for (std::size_t i = 0; i < det.size(); ++i) {
    if (det[i] > 0 && assignment[i] > 0) touched[static_cast<std::size_t>(det[i])] = 1;
  }
  for (int d = 1; d <= r.n_detections; ++d) r.fp += touched[static_cast<std::size_t>(d)] ? 0 : 1;
  return r;
}

inline MatchResult match(const LabelMap& gt, const ComponentViews& gt_for_cov,
                         const ComponentViews& gt_for_acc, const BinaryMask& pred,
                         const ComponentViews& match_test)
{
  return match_assigned(gt, gt_for_cov, gt_for_acc, pred, match_test, watershed_assign(gt, pred));
}

} // namespace mangaseg

#endif
