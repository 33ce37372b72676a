#ifndef MANGASEG_MORPHOLOGY_HPP_
#define MANGASEG_MORPHOLOGY_HPP_

#include <cmath>

#include "mangaseg/grid.hpp"

namespace mangaseg
{

// Binary morphology with the 3x3 cross structuring element (centre plus its
// 4-neighbours). Pixels outside the raster count as background for both
// operations. A radius is expressed as a number of iterations.

namespace detail
{

inline BinaryMask erode_once(const BinaryMask& in)
{
  const int w = in.width();
  const int h = in.height();
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.set(x, y,
              in.at(x, y) && x > 0 && in.at(x - 1, y) && x + 1 < w && in.at(x + 1, y) && y > 0 &&
                in.at(x, y - 1) && y + 1 < h && in.at(x, y + 1));
    }
  }
  return out;
}

inline BinaryMask dilate_once(const BinaryMask& in)
{
  const int w = in.width();
  const int h = in.height();
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      out.set(x, y,
              in.at(x, y) || (x > 0 && in.at(x - 1, y)) || (x + 1 < w && in.at(x + 1, y)) ||
                (y > 0 && in.at(x, y - 1)) || (y + 1 < h && in.at(x, y + 1)));
    }
  }
  return out;
}

inline void require_iterations(int iterations)
{
  if (iterations < 1) throw InputError("morphology iterations must be >= 1");
}

} // namespace detail

inline BinaryMask erode(const BinaryMask& mask, int iterations = 1)
{
  detail::require_iterations(iterations);
  BinaryMask cur = mask;
  for (int i = 0; i < iterations; ++i) cur = detail::erode_once(cur);
  return cur;
}

inline BinaryMask dilate(const BinaryMask& mask, int iterations = 1)
{
  detail::require_iterations(iterations);
  BinaryMask cur = mask;
  for (int i = 0; i < iterations; ++i) cur = detail::dilate_once(cur);
  return cur;
}

/// Strict threshold: a pixel is text iff its probability exceeds `threshold`.
inline BinaryMask binarize(const ProbMap& prob, double threshold)
{
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw InputError("binarize threshold must lie in (0, 1)");
  }
  prob.validate();
  return mask_where(prob, [threshold](double v) { return v > threshold; });
}

} // namespace mangaseg

#endif
