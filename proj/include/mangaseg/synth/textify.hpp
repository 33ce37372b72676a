#ifndef MANGASEG_SYNTH_TEXTIFY_HPP_
#define MANGASEG_SYNTH_TEXTIFY_HPP_

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mangaseg/error.hpp"
#include "mangaseg/grid.hpp"
#include "mangaseg/synth/font_asset.hpp"
#include "mangaseg/synth/random.hpp"
#include "mangaseg/synth/raster.hpp"
#include "mangaseg/synth/rects.hpp"
#include "mangaseg/synth/wrap.hpp"

namespace mangaseg::synth
{

/// Probabilities and ranges of the text overlay schedule.
struct TextifyConfig
{
  int padding_min = 4;
  int padding_max = 10;

  /// One rectangle covering at least `single_rect_min_cover` of the canvas,
  /// otherwise between min_rects and max_rects placed by generate_rects.
  double p_single_rect = 0.5;
  double single_rect_min_cover = 0.66;
  int min_rects = 7;
  int max_rects = 15;

  /// Font size in pixels: mostly regular sizes, sometimes large.
  double p_regular_size = 0.8;
  int regular_size_min = 12;
  int regular_size_max = 28;
  int large_size_min = 28;
  int large_size_max = 72;
  int min_size = 6;

  /// Characters generated = estimated rectangle capacity x fill_factor.
  double fill_factor = 0.5;
  int max_chars = 4000;

  double p_black_text = 0.8;
  double p_white_border = 0.8;
  double p_vertical = 0.3;
  double p_rotate = 0.1;
  double max_rotation_deg = 30.0;
  double p_transparent = 0.1;
  double transparency_min = 0.1;
  double transparency_max = 0.6;
  /// Swap text and border colours.
  double p_inverted = 0.05;
  double p_border = 0.5;
  int border_width_min = 1;
  int border_width_max = 3;

  /// After all rectangles: one extra free rectangle with a few large
  /// characters (sound-effect style lettering).
  double p_sfx = 0.2;
};

struct StyleDecision
{
  Rgb text_color{0, 0, 0};
  Rgb border_color{255, 255, 255};
  bool vertical = false;
  double rotation_deg = 0.0;
  double transparency = 0.0;
  bool inverted = false;
  bool has_border = false;
  int border_width = 0;
};

struct BlockRecord
{
  Rect rect;
  /// rect minus padding; text is laid out here.
  Rect inner;
  bool sfx = false;
  /// False when the padded area is too small to hold text.
  bool rendered = false;
  std::string font_id;
  int font_size = 0;
  StyleDecision style;
  std::u32string text;
  std::vector<std::u32string> lines;
};

struct TextifyResult
{
  RgbImage image;
  BinaryMask mask;
  int padding = 0;
  bool single_rect = false;
  std::vector<BlockRecord> blocks;
};

namespace detail
{

inline Rgb random_rgb(Rng& rng)
{
  const auto r = static_cast<std::uint8_t>(uniform_int(rng, 0, 255));
  const auto g = static_cast<std::uint8_t>(uniform_int(rng, 0, 255));
  const auto b = static_cast<std::uint8_t>(uniform_int(rng, 0, 255));
  return {r, g, b};
}

inline Grid<std::uint8_t> grow_coverage(const Grid<std::uint8_t>& cov, int radius)
{
  Grid<std::uint8_t> out = cov;
  for (int y = 0; y < cov.height(); ++y) {
    for (int x = 0; x < cov.width(); ++x) {
      std::uint8_t m = 0;
      for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
          if (dx * dx + dy * dy > radius * radius || !cov.contains(x + dx, y + dy)) continue;
          m = std::max(m, cov(x + dx, y + dy));
        }
      }
      out(x, y) = m;
    }
  }
  return out;
}

inline std::uint8_t blend(std::uint8_t from, std::uint8_t to, double alpha)
{
  return static_cast<std::uint8_t>(std::lround(from + (static_cast<double>(to) - from) * alpha));
}

class BlockPainter
{
public:
  BlockPainter(TextifyResult& out, std::span<const FontAsset> fonts, Rng& rng, const TextifyConfig& cfg)
    : out_(out), fonts_(fonts), rng_(rng), cfg_(cfg)
  {
    for (const auto& f : fonts_) weights_.push_back(static_cast<double>(f.supported.size()));
  }

  void paint(const Rect& rect, bool sfx)
  {
    BlockRecord rec;
    rec.rect = rect;
    rec.sfx = sfx;
    const int pad = out_.padding;
    rec.inner = {rect.x + pad, rect.y + pad, rect.w - 2 * pad, rect.h - 2 * pad};
    if (rec.inner.w < 4 || rec.inner.h < 4) {
      out_.blocks.push_back(std::move(rec));
      return;
    }

    int size;
    if (sfx) {
      size = static_cast<int>(uniform_real(rng_, 0.5, 0.9) * std::min(rec.inner.w, rec.inner.h));
    } else if (chance(rng_, cfg_.p_regular_size)) {
      size = static_cast<int>(uniform_int(rng_, cfg_.regular_size_min, cfg_.regular_size_max));
    } else {
      size = static_cast<int>(uniform_int(rng_, cfg_.large_size_min, cfg_.large_size_max));
    }
    const FontAsset& font = fonts_[weighted_index(rng_, weights_)];

    StyleDecision& st = rec.style;
    st.text_color = chance(rng_, cfg_.p_black_text) ? Rgb{0, 0, 0} : random_rgb(rng_);
    st.border_color = chance(rng_, cfg_.p_white_border) ? Rgb{255, 255, 255} : random_rgb(rng_);
    st.vertical = chance(rng_, cfg_.p_vertical);
    if (chance(rng_, cfg_.p_rotate)) {
      st.rotation_deg = uniform_real(rng_, -cfg_.max_rotation_deg, cfg_.max_rotation_deg);
    }
    if (chance(rng_, cfg_.p_transparent)) {
      st.transparency = uniform_real(rng_, cfg_.transparency_min, cfg_.transparency_max);
    }
    st.inverted = chance(rng_, cfg_.p_inverted);
    if (st.inverted) std::swap(st.text_color, st.border_color);
    st.has_border = chance(rng_, cfg_.p_border);
    if (st.has_border) {
      st.border_width = static_cast<int>(uniform_int(rng_, cfg_.border_width_min, cfg_.border_width_max));
    }

    // Shrink the size until one line (or one column cell) fits.
    const FontFile& ff = *font.font;
    const double em_lines = static_cast<double>(ff.ascender() - ff.descender()) / ff.units_per_em();
    const int fit_extent = st.vertical ? std::min(rec.inner.w, rec.inner.h) : rec.inner.h;
    size = std::min(size, static_cast<int>(fit_extent / std::max(em_lines, 1e-6)));
    size = std::max(size, cfg_.min_size);
    rec.font_size = size;
    rec.font_id = font.id;

    const FontMeasurer horizontal(ff, size);
    const std::int64_t line_h = std::max<std::int64_t>(1, horizontal.line_height());
    const double mean_adv = std::max(1.0, font.mean_advance * horizontal.scale());
    double capacity;
    if (st.vertical) {
      capacity = std::floor(rec.inner.h / static_cast<double>(line_h)) *
                 std::floor(rec.inner.w / static_cast<double>(line_h));
    } else {
      capacity = std::floor(rec.inner.w / mean_adv) * std::floor(rec.inner.h / static_cast<double>(line_h));
    }
    std::int64_t n_chars = sfx ? uniform_int(rng_, 1, 4)
                               : std::max<std::int64_t>(1, std::llround(capacity * cfg_.fill_factor));
    n_chars = std::min<std::int64_t>(n_chars, cfg_.max_chars);
    for (std::int64_t k = 0; k < n_chars; ++k) {
      const auto idx = uniform_int(rng_, 0, static_cast<std::int64_t>(font.supported.size()) - 1);
      rec.text.push_back(font.supported[static_cast<std::size_t>(idx)]);
    }

    if (st.vertical) {
      const VerticalMeasurer vm(line_h, line_h);
      rec.lines = text_wrap_fast(vm, rec.text, rec.inner.h, rec.inner.w);
    } else {
      rec.lines = text_wrap_fast(horizontal, rec.text, rec.inner.w, rec.inner.h);
    }
    render(rec, ff, horizontal, line_h);
    rec.rendered = true;
    out_.blocks.push_back(std::move(rec));
  }

private:
  void render(const BlockRecord& rec, const FontFile& ff, const FontMeasurer& m, std::int64_t line_h)
  {
    const Rect& r = rec.rect;
    const double scale = m.scale();
    const double pad = out_.padding;
    const Affine rot =
      Affine::rotation_about(rec.style.rotation_deg, {r.w / 2.0, r.h / 2.0});

    std::vector<Edge> edges;
    auto place = [&](char32_t cp, double x, double baseline) {
      const Affine glyph{scale, 0.0, 0.0, -scale, x, baseline};
      flatten(ff.outline(ff.glyph_index(cp)), rot.then_after(glyph), edges);
    };
    const double ascent = ff.ascender() * scale;
    for (std::size_t k = 0; k < rec.lines.size(); ++k) {
      const std::u32string& line = rec.lines[k];
      if (rec.style.vertical) {
        const double center = pad + rec.inner.w - (k + 0.5) * static_cast<double>(line_h);
        for (std::size_t i = 0; i < line.size(); ++i) {
          const double top = pad + static_cast<double>(i) * line_h;
          place(line[i], center - m.advance(line[i]) / 2.0, top + ascent);
        }
      } else {
        double pen = pad;
        const double baseline = pad + ascent + static_cast<double>(k) * line_h;
        for (char32_t cp : line) {
          place(cp, pen, baseline);
          pen += static_cast<double>(m.advance(cp));
        }
      }
    }

    CoverageRaster fill(r.w, r.h);
    fill.fill(edges);
    const auto& fc = fill.counts();
    const Grid<std::uint8_t> border =
      rec.style.has_border ? grow_coverage(fc, rec.style.border_width) : fc;
    const int half = CoverageRaster::kFull / 2;
    const double opacity = 1.0 - rec.style.transparency;

    for (int y = 0; y < r.h; ++y) {
      for (int x = 0; x < r.w; ++x) {
        Rgb target;
        int cov;
        if (fc(x, y) > half) {
          target = rec.style.text_color;
          cov = fc(x, y);
        } else if (rec.style.has_border && border(x, y) > half) {
          target = rec.style.border_color;
          cov = border(x, y);
        } else {
          continue;
        }
        const double alpha = opacity * cov / CoverageRaster::kFull;
        Rgb& px = out_.image(r.x + x, r.y + y);
        const Rgb painted{blend(px.r, target.r, alpha), blend(px.g, target.g, alpha),
                          blend(px.b, target.b, alpha)};
        if (painted == px) continue;
        px = painted;
        out_.mask.set(r.x + x, r.y + y, true);
      }
    }
  }

  TextifyResult& out_;
  std::span<const FontAsset> fonts_;
  Rng& rng_;
  const TextifyConfig& cfg_;
  std::vector<double> weights_;
};

} // namespace detail

/// Overlays random text on `image` and returns the new image with the exact
/// mask of the pixels the text changed.
///
/// Rectangles are disjoint and each block is clipped to its rectangle, so
/// every pixel is painted at most once and the mask never leaves the union
/// of rectangles. All randomness comes from `rng`.
inline TextifyResult textify(const RgbImage& image, std::span<const FontAsset> fonts, Rng& rng,
                             const TextifyConfig& cfg = {})
{
  std::vector<FontAsset> usable;
  for (const auto& f : fonts) {
    if (f.usable()) usable.push_back(f);
  }
  if (usable.empty()) throw ConfigError("textify: no font supports any codepoint of the pool");

  const int w = image.width();
  const int h = image.height();
  TextifyResult out{image, BinaryMask(w, h), 0, false, {}};
  if (w < kMinRectCanvas || h < kMinRectCanvas) return out;

  out.padding = static_cast<int>(uniform_int(rng, cfg.padding_min, cfg.padding_max));
  std::vector<Rect> rects;
  out.single_rect = chance(rng, cfg.p_single_rect);
  if (out.single_rect) {
    const double wf = uniform_real(rng, std::sqrt(cfg.single_rect_min_cover), 1.0);
    const double hf = uniform_real(rng, std::min(1.0, cfg.single_rect_min_cover / wf), 1.0);
    const int rw = std::min(w, static_cast<int>(std::ceil(wf * w)));
    const int rh = std::min(h, static_cast<int>(std::ceil(hf * h)));
    const int rx = static_cast<int>(uniform_int(rng, 0, w - rw));
    const int ry = static_cast<int>(uniform_int(rng, 0, h - rh));
    rects.push_back({rx, ry, rw, rh});
  } else {
    const int limit = static_cast<int>(uniform_int(rng, cfg.min_rects, cfg.max_rects));
    rects = generate_rects(w, h, limit, rng);
  }

  detail::BlockPainter painter(out, usable, rng, cfg);
  for (const Rect& r : rects) painter.paint(r, false);

  if (chance(rng, cfg.p_sfx)) {
    const auto extra = generate_rects(w, h, 1, rng);
    if (!extra.empty() && std::none_of(rects.begin(), rects.end(),
                                       [&](const Rect& r) { return r.intersects(extra.front()); })) {
      painter.paint(extra.front(), true);
    }
  }
  return out;
}

} // namespace mangaseg::synth

#endif
