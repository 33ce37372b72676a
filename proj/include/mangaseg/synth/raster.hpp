#ifndef MANGASEG_SYNTH_RASTER_HPP_
#define MANGASEG_SYNTH_RASTER_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mangaseg/grid.hpp"
#include "mangaseg/synth/truetype.hpp"

namespace mangaseg::synth
{

struct Point
{
  double x = 0.0;
  double y = 0.0;
};

struct Edge
{
  Point a;
  Point b;
};

/// Affine map from font units to canvas pixels:
///   x' = a*x + c*y + tx,  y' = b*x + d*y + ty.
struct Affine
{
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0, tx = 0.0, ty = 0.0;

  Point apply(double x, double y) const { return {a * x + c * y + tx, b * x + d * y + ty}; }

  /// this(other(p)).
  Affine then_after(const Affine& o) const
  {
    return {a * o.a + c * o.b, b * o.a + d * o.b, a * o.c + c * o.d,
            b * o.c + d * o.d, a * o.tx + c * o.ty + tx, b * o.tx + d * o.ty + ty};
  }

  static Affine rotation_about(double degrees, Point center)
  {
    const double r = degrees * 3.14159265358979323846 / 180.0;
    const double cs = std::cos(r), sn = std::sin(r);
    return {cs, sn, -sn, cs, center.x - cs * center.x + sn * center.y,
            center.y - sn * center.x - cs * center.y};
  }
};

namespace detail
{

inline void flatten_quad(Point p0, Point p1, Point p2, std::vector<Edge>& out)
{
  const double dx = p0.x - 2.0 * p1.x + p2.x;
  const double dy = p0.y - 2.0 * p1.y + p2.y;
  const double dev = std::sqrt(dx * dx + dy * dy);
  const int steps = std::clamp(static_cast<int>(std::ceil(std::sqrt(dev * 2.0))), 1, 32);
  Point prev = p0;
  for (int i = 1; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const double u = 1.0 - t;
    const Point cur{u * u * p0.x + 2 * u * t * p1.x + t * t * p2.x,
                    u * u * p0.y + 2 * u * t * p1.y + t * t * p2.y};
    out.push_back({prev, cur});
    prev = cur;
  }
}

} // namespace detail

/// Appends the outline's closed contours as line segments in canvas space.
/// Consecutive off-curve points imply an on-curve midpoint between them.
inline void flatten(const GlyphOutline& outline, const Affine& xf, std::vector<Edge>& edges)
{
  struct Node
  {
    Point p;
    bool on;
  };
  std::vector<Node> seq;
  for (const Contour& c : outline.contours) {
    const std::size_t n = c.size();
    if (n < 2) continue;
    seq.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const OutlinePoint& q = c[i];
      const OutlinePoint& r = c[(i + 1) % n];
      const Point p = xf.apply(q.x, q.y);
      seq.push_back({p, q.on_curve});
      if (!q.on_curve && !r.on_curve) {
        const Point pr = xf.apply(r.x, r.y);
        seq.push_back({{(p.x + pr.x) / 2, (p.y + pr.y) / 2}, true});
      }
    }
    const auto first_on = std::find_if(seq.begin(), seq.end(), [](const Node& v) { return v.on; });
    std::rotate(seq.begin(), first_on, seq.end());

    Point cur = seq[0].p;
    bool have_ctrl = false;
    Point ctrl;
    for (std::size_t k = 1; k <= seq.size(); ++k) {
      const Node& v = seq[k % seq.size()];
      if (!v.on) {
        ctrl = v.p;
        have_ctrl = true;
        continue;
      }
      if (have_ctrl) detail::flatten_quad(cur, ctrl, v.p, edges);
      else edges.push_back({cur, v.p});
      have_ctrl = false;
      cur = v.p;
    }
  }
}

/// Supersampled non-zero winding fill. Each pixel holds how many of its
/// kSamples x kSamples sample points lie inside, 0..kSamples^2.
class CoverageRaster
{
public:
  static constexpr int kSamples = 4;
  static constexpr int kFull = kSamples * kSamples;

  CoverageRaster(int width, int height) : counts_(width, height, 0) {}

  const Grid<std::uint8_t>& counts() const noexcept { return counts_; }

  /// Fills the area enclosed by `edges`, offset so canvas pixel (0, 0) maps
  /// to raster pixel (0, 0).
  void fill(const std::vector<Edge>& edges)
  {
    const int w = counts_.width();
    const int h = counts_.height();
    struct Crossing
    {
      double x;
      int dir;
    };
    // Edges sorted by their upper end; `active` holds those spanning the
    // current sample row.
    std::vector<const Edge*> pending;
    for (const Edge& e : edges) {
      if (e.a.y != e.b.y) pending.push_back(&e);
    }
    auto top = [](const Edge* e) { return std::min(e->a.y, e->b.y); };
    auto bottom = [](const Edge* e) { return std::max(e->a.y, e->b.y); };
    std::stable_sort(pending.begin(), pending.end(),
                     [&](const Edge* p, const Edge* q) { return top(p) < top(q); });
    std::size_t next = 0;
    std::vector<const Edge*> active;
    std::vector<Crossing> xs;
    for (int sy = 0; sy < h * kSamples; ++sy) {
      const double y = (sy + 0.5) / kSamples;
      while (next < pending.size() && top(pending[next]) <= y) active.push_back(pending[next++]);
      std::erase_if(active, [&](const Edge* e) { return bottom(e) <= y; });
      xs.clear();
      for (const Edge* ep : active) {
        const Edge& e = *ep;
        const bool up = e.a.y <= y && e.b.y > y;
        const bool down = e.b.y <= y && e.a.y > y;
        if (!up && !down) continue;
        const double t = (y - e.a.y) / (e.b.y - e.a.y);
        xs.push_back({e.a.x + t * (e.b.x - e.a.x), up ? 1 : -1});
      }
      if (xs.empty()) continue;
      std::sort(xs.begin(), xs.end(), [](const Crossing& p, const Crossing& q) {
        return p.x < q.x || (p.x == q.x && p.dir < q.dir);
      });
      const int py = sy / kSamples;
      int winding = 0;
      for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        winding += xs[k].dir;
        if (winding == 0) continue;
        // Sample columns whose centres fall in [x_k, x_k+1).
        const double lo = xs[k].x * kSamples - 0.5;
        const double hi = xs[k + 1].x * kSamples - 0.5;
        int c0 = static_cast<int>(std::ceil(lo));
        int c1 = static_cast<int>(std::ceil(hi)) - 1;
        c0 = std::max(c0, 0);
        c1 = std::min(c1, w * kSamples - 1);
        for (int sx = c0; sx <= c1; ++sx) {
          auto& v = counts_(sx / kSamples, py);
          if (v < kFull) ++v;
        }
      }
    }
  }

private:
  Grid<std::uint8_t> counts_;
};

} // namespace mangaseg::synth

#endif
