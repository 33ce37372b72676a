#ifndef MANGASEG_TESTS_FIXTURES_HPP_
#define MANGASEG_TESTS_FIXTURES_HPP_

#include <random>

#include "mangaseg/grid.hpp"
#include "mangaseg/matching.hpp"
#include "mangaseg/morphology.hpp"
#include "support/oracles.hpp"

namespace fixture
{

using namespace mangaseg;

inline void fill_class(ClassMask& m, int x0, int y0, int w, int h, TextClass c)
{
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x)
      if (m.contains(x, y)) m(x, y) = c;
}

struct Pair
{
  ClassMask gt;
  BinaryMask pred;
};

/// Five ground-truth characters. The prediction merges the first two into
/// one blob, hits the third exactly, the fourth shifted and the fifth
/// partially, and adds one stray blob: 5 detections against 6 prediction
/// components.
inline Pair watershed_scene()
{
  Pair p{ClassMask(60, 20), BinaryMask(60, 20)};
  fill_class(p.gt, 2, 2, 6, 8, TextClass::Easy);
  fill_class(p.gt, 10, 2, 6, 8, TextClass::Easy);
  fill_class(p.gt, 20, 2, 6, 8, TextClass::Easy);
  fill_class(p.gt, 30, 2, 6, 8, TextClass::Hard);
  fill_class(p.gt, 42, 4, 8, 8, TextClass::Hard);
  oracle::fill_rect(p.pred, 2, 3, 14, 6);
  oracle::fill_rect(p.pred, 20, 2, 6, 8);
  oracle::fill_rect(p.pred, 31, 3, 6, 8);
  oracle::fill_rect(p.pred, 42, 4, 5, 8);
  oracle::fill_rect(p.pred, 54, 14, 3, 3);
  return p;
}

/// Random rectangles and blobs of ground truth, 1..max_components of them,
/// labelled easy or hard at random.
inline ClassMask random_gt(std::mt19937_64& rng, int w, int h, int max_components)
{
  ClassMask gt(w, h);
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_components));
  for (int k = 0; k < n; ++k) {
    const int cw = 3 + static_cast<int>(rng() % 9);
    const int ch = 3 + static_cast<int>(rng() % 9);
    const int x = static_cast<int>(rng() % static_cast<unsigned>(w - 2));
    const int y = static_cast<int>(rng() % static_cast<unsigned>(h - 2));
    fill_class(gt, x, y, cw, ch, rng() % 3 == 0 ? TextClass::Hard : TextClass::Easy);
  }
  return gt;
}

/// Ground truth of separated rectangles (one per grid cell, some cells
/// empty) and a prediction with boundary errors only: per component exact,
/// dilated, eroded or shifted by one pixel, then some boundary pixels
/// dropped and stray blobs added away from the text.
inline Pair boundary_error_pair(std::mt19937_64& rng)
{
  constexpr int cell = 22, cols = 4, rows = 3;
  Pair p{ClassMask(cell * cols, cell * rows), BinaryMask(cell * cols, cell * rows)};
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  std::vector<std::pair<int, int>> free_cells;
  for (int cy = 0; cy < rows; ++cy) {
    for (int cx = 0; cx < cols; ++cx) {
      if (rng() % 4 == 0) {
        free_cells.emplace_back(cx, cy);
        continue;
      }
      ClassMask one(p.gt.width(), p.gt.height());
      const int w = pick(1, 12), h = pick(1, 12);
      const TextClass c = rng() % 3 == 0 ? TextClass::Hard : TextClass::Easy;
      fill_class(one, cx * cell + 5, cy * cell + 5, w, h, c);
      if (rng() % 3 == 0) fill_class(one, cx * cell + 5 + pick(0, w - 1), cy * cell + 5 + pick(0, h - 1), pick(1, 6), pick(1, 6), c);
      const BinaryMask g = one.to_binary();
      BinaryMask d(g.width(), g.height());
      const int kind = pick(0, 5);
      if (kind == 0) d = g;
      else if (kind == 1) d = dilate(g, pick(1, 2));
      else if (kind == 2) d = erode(g, pick(1, 3));
      else {
        static constexpr int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
        const int s = kind - 2;
        for (int y = 0; y < g.height(); ++y)
          for (int x = 0; x < g.width(); ++x)
            if (g(x, y) && d.contains(x + dx[s], y + dy[s])) d.set(x + dx[s], y + dy[s], true);
      }
      if (kind != 2) {
        const BinaryMask core = erode(g);
        for (std::size_t i = 0; i < d.size(); ++i)
          if (g[i] && !core[i] && d[i] && rng() % 4 == 0) d[i] = 0;
      }
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i]) p.gt[i] = one[i];
        if (d[i]) p.pred[i] = 1;
      }
    }
  }
  for (const auto& [cx, cy] : free_cells) {
    if (rng() % 2) oracle::fill_rect(p.pred, cx * cell + pick(2, 12), cy * cell + pick(2, 12), pick(1, 6), pick(1, 6));
  }
  return p;
}

/// Ground truth square with a prediction covering its outer ring and one
/// core pixel: relaxed coverage drops below normal coverage.
inline Pair ring_counterexample()
{
  Pair p{ClassMask(9, 9), BinaryMask(9, 9)};
  fill_class(p.gt, 2, 2, 5, 5, TextClass::Easy);
  oracle::fill_rect(p.pred, 2, 2, 5, 5);
  oracle::fill_rect(p.pred, 3, 3, 3, 3, false);
  p.pred.set(4, 4, true);
  return p;
}

/// Arbitrary match outcome: up to 11 components, a quarter unmatched, some
/// with perfect accuracy, and up to 5 false positives.
inline MatchResult random_match(std::mt19937_64& rng)
{
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MatchResult r;
  r.m = static_cast<int>(rng() % 12);
  for (int k = 0; k < r.m; ++k) {
    GtMatch g;
    g.gt_label = k + 1;
    g.matched = rng() % 4 != 0;
    if (g.matched) {
      g.cov = unit(rng);
      g.acc = rng() % 5 == 0 ? 1.0 : unit(rng);
      ++r.tp;
    }
    r.per_gt.push_back(g);
  }
  r.fp = static_cast<int>(rng() % 6);
  r.n_detections = r.tp + r.fp;
  return r;
}

} // namespace fixture

#endif
