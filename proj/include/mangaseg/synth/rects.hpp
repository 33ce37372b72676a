#ifndef MANGASEG_SYNTH_RECTS_HPP_
#define MANGASEG_SYNTH_RECTS_HPP_

#include <algorithm>
#include <vector>

#include "mangaseg/error.hpp"
#include "mangaseg/synth/random.hpp"

namespace mangaseg::synth
{

struct Rect
{
  int x = 0;
  int y = 0;
  int w = 1;
  int h = 1;

  /// Pixel sets [x, x+w) x [y, y+h) share at least one pixel.
  bool intersects(const Rect& o) const noexcept
  {
    return x < o.x + o.w && o.x < x + w && y < o.y + o.h && o.y < y + h;
  }

  bool contains(int px, int py) const noexcept
  {
    return px >= x && py >= y && px < x + w && py < y + h;
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

inline constexpr int kMinRectCanvas = 16;

/// Random non-overlapping rectangles on a width x height canvas.
///
/// At most min(2 * limit, 15) candidates are drawn. Each gets a top-left
/// corner in [0, 0.93 w] x [0, 0.9 h] and a size drawn as a percentage of the
/// canvas: usually small (7-15% wide, 10-35% tall), otherwise 15-100% by
/// 10-50%. A candidate that hits an accepted rectangle may, with even odds,
/// halve its width and then, again with even odds, its height; if it still
/// collides it is dropped. Every rectangle is clipped to the canvas.
inline std::vector<Rect> generate_rects(int width, int height, int limit, Rng& rng)
{
  if (width < kMinRectCanvas || height < kMinRectCanvas) {
    throw InputError("generate_rects: canvas must be at least 16x16");
  }
  std::vector<Rect> rects;
  if (limit <= 0) return rects;

  const int attempts = std::min(limit * 2, 15);
  for (int i = 0; i < attempts; ++i) {
    const int x = static_cast<int>(uniform_int(rng, 0, static_cast<int>(width * 0.93)));
    const int y = static_cast<int>(uniform_int(rng, 0, static_cast<int>(height * 0.9)));
    int wp, hp;
    if (uniform01(rng) < 0.8) {
      wp = static_cast<int>(uniform_int(rng, 7, 15));
      hp = static_cast<int>(uniform_int(rng, 10, 35));
    } else {
      wp = static_cast<int>(uniform_int(rng, 15, 100));
      hp = static_cast<int>(uniform_int(rng, 10, 50));
    }
    int w = std::min(static_cast<int>(static_cast<long long>(wp) * width / 100), width);
    int h = std::min(static_cast<int>(static_cast<long long>(hp) * height / 100), height);
    w = std::clamp(w, 1, width - x);
    h = std::clamp(h, 1, height - y);
    Rect r{x, y, w, h};

    bool add = true;
    for (const Rect& other : rects) {
      if (other.intersects(r) && uniform01(rng) < 0.5) {
        r.w = std::max(1, r.w / 2);
        if (other.intersects(r) && uniform01(rng) < 0.5) r.h = std::max(1, r.h / 2);
      }
      if (other.intersects(r)) {
        add = false;
        break;
      }
    }
    if (add) {
      rects.push_back(r);
      if (static_cast<int>(rects.size()) == limit) break;
    }
  }
  return rects;
}

} // namespace mangaseg::synth

#endif
