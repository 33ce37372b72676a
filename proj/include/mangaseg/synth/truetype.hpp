#ifndef MANGASEG_SYNTH_TRUETYPE_HPP_
#define MANGASEG_SYNTH_TRUETYPE_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <vector>

#include "mangaseg/error.hpp"

namespace mangaseg::synth
{

/// One outline point in font units. Off-curve points are quadratic controls.
struct OutlinePoint
{
  double x = 0.0;
  double y = 0.0;
  bool on_curve = true;

  friend bool operator==(const OutlinePoint&, const OutlinePoint&) = default;
};

using Contour = std::vector<OutlinePoint>;

struct GlyphOutline
{
  std::vector<Contour> contours;

  bool empty() const noexcept
  {
    return std::all_of(contours.begin(), contours.end(), [](const Contour& c) { return c.empty(); });
  }

  friend bool operator==(const GlyphOutline&, const GlyphOutline&) = default;
};

namespace detail
{

class ByteReader
{
public:
  ByteReader(const std::vector<std::uint8_t>& bytes, std::size_t begin, std::size_t end)
    : bytes_(&bytes), begin_(begin), end_(end)
  {
    if (begin > end || end > bytes.size()) throw FontError("font table out of file bounds");
  }

  std::size_t size() const noexcept { return end_ - begin_; }

  std::uint8_t u8(std::size_t off) const
  {
    check(off, 1);
    return (*bytes_)[begin_ + off];
  }

  std::uint16_t u16(std::size_t off) const
  {
    check(off, 2);
    const auto* p = bytes_->data() + begin_ + off;
    return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
  }

  std::int16_t i16(std::size_t off) const { return static_cast<std::int16_t>(u16(off)); }

  std::uint32_t u32(std::size_t off) const
  {
    check(off, 4);
    const auto* p = bytes_->data() + begin_ + off;
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
           std::uint32_t{p[3]};
  }

  ByteReader sub(std::size_t off, std::size_t len) const
  {
    check(off, len);
    return ByteReader(*bytes_, begin_ + off, begin_ + off + len);
  }

private:
  void check(std::size_t off, std::size_t len) const
  {
    if (off > size() || len > size() - off) throw FontError("truncated font data");
  }

  const std::vector<std::uint8_t>* bytes_;
  std::size_t begin_;
  std::size_t end_;
};

inline std::uint32_t tag(const char (&s)[5])
{
  return (std::uint32_t(std::uint8_t(s[0])) << 24) | (std::uint32_t(std::uint8_t(s[1])) << 16) |
         (std::uint32_t(std::uint8_t(s[2])) << 8) | std::uint32_t(std::uint8_t(s[3]));
}

// Composite glyph flags.
inline constexpr std::uint16_t kArgsAreWords = 0x0001;
inline constexpr std::uint16_t kArgsAreXY = 0x0002;
inline constexpr std::uint16_t kHaveScale = 0x0008;
inline constexpr std::uint16_t kMoreComponents = 0x0020;
inline constexpr std::uint16_t kHaveXYScale = 0x0040;
inline constexpr std::uint16_t kHaveTwoByTwo = 0x0080;

} // namespace detail

/// A parsed TrueType font (glyf outlines). CFF-flavoured OpenType is rejected.
/// Collections (.ttc) load their first face.
class FontFile
{
public:
  static FontFile from_bytes(std::vector<std::uint8_t> bytes)
  {
    FontFile f;
    f.bytes_ = std::move(bytes);
    f.load();
    return f;
  }

  static FontFile from_file(const std::filesystem::path& path)
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FontError("cannot open font file: " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      return from_bytes(std::move(bytes));
    } catch (const FontError& e) {
      throw FontError(path.string() + ": " + e.what());
    }
  }

  int units_per_em() const noexcept { return units_per_em_; }
  int ascender() const noexcept { return ascender_; }
  int descender() const noexcept { return descender_; }
  int line_gap() const noexcept { return line_gap_; }
  int num_glyphs() const noexcept { return num_glyphs_; }

  /// Glyph index from the character map; 0 (.notdef) when unmapped.
  std::uint16_t glyph_index(char32_t cp) const
  {
    auto it = cmap_.upper_bound(cp);
    if (it == cmap_.begin()) return 0;
    --it;
    const CmapRange& r = it->second;
    if (cp > r.last) return 0;
    const std::uint32_t gid = r.mapped.empty() ? r.first_glyph + (cp - it->first)
                                               : r.mapped[cp - it->first];
    return gid < static_cast<std::uint32_t>(num_glyphs_) ? static_cast<std::uint16_t>(gid) : 0;
  }

  std::uint16_t advance_width(std::uint16_t gid) const
  {
    if (advances_.empty()) return 0;
    return gid < advances_.size() ? advances_[gid] : advances_.back();
  }

  GlyphOutline outline(std::uint16_t gid) const
  {
    GlyphOutline out;
    append_outline(gid, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0, out);
    return out;
  }

  /// Every mapped codepoint, ascending.
  std::vector<char32_t> mapped_codepoints() const
  {
    std::vector<char32_t> out;
    for (const auto& [first, r] : cmap_) {
      for (char32_t cp = first;; ++cp) {
        if (glyph_index(cp) != 0) out.push_back(cp);
        if (cp == r.last) break;
      }
    }
    return out;
  }

private:
  struct CmapRange
  {
    char32_t last = 0;
    std::uint32_t first_glyph = 0;
    /// Explicit glyph per codepoint; empty means first_glyph + offset.
    std::vector<std::uint16_t> mapped;
  };

  void load()
  {
    detail::ByteReader file(bytes_, 0, bytes_.size());
    std::size_t base = 0;
    std::uint32_t version = file.u32(0);
    if (version == detail::tag("ttcf")) {
      if (file.u32(8) == 0) throw FontError("empty font collection");
      base = file.u32(12);
      version = file.u32(base);
    }
    if (version == detail::tag("OTTO")) throw FontError("CFF outlines are not supported");
    if (version != 0x00010000u && version != detail::tag("true")) {
      throw FontError("not a TrueType font");
    }

    const std::uint16_t num_tables = file.u16(base + 4);
    std::map<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> tables;
    for (std::uint16_t t = 0; t < num_tables; ++t) {
      const std::size_t rec = base + 12 + 16u * t;
      tables[file.u32(rec)] = {file.u32(rec + 8), file.u32(rec + 12)};
    }
    auto table = [&](const char(&name)[5]) {
      auto it = tables.find(detail::tag(name));
      if (it == tables.end()) throw FontError(std::string("missing table '") + name + "'");
      return file.sub(it->second.first, it->second.second);
    };

    const auto head = table("head");
    units_per_em_ = head.u16(18);
    if (units_per_em_ == 0) throw FontError("unitsPerEm is zero");
    const int loca_format = head.i16(50);

    num_glyphs_ = table("maxp").u16(4);
    if (num_glyphs_ == 0) throw FontError("font has no glyphs");

    const auto hhea = table("hhea");
    ascender_ = hhea.i16(4);
    descender_ = hhea.i16(6);
    line_gap_ = hhea.i16(8);
    const std::uint16_t n_hmetrics = hhea.u16(34);
    const auto hmtx = table("hmtx");
    for (std::uint16_t g = 0; g < n_hmetrics && g < num_glyphs_; ++g) advances_.push_back(hmtx.u16(4u * g));

    const auto loca = table("loca");
    glyph_offsets_.resize(static_cast<std::size_t>(num_glyphs_) + 1);
    for (int g = 0; g <= num_glyphs_; ++g) {
      glyph_offsets_[g] = loca_format == 0 ? 2u * loca.u16(2u * g) : loca.u32(4u * g);
    }
    const auto glyf_it = tables.find(detail::tag("glyf"));
    if (glyf_it == tables.end()) throw FontError("missing table 'glyf'");
    glyf_begin_ = glyf_it->second.first;
    glyf_length_ = glyf_it->second.second;
    file.sub(glyf_begin_, glyf_length_);

    load_cmap(table("cmap"));
  }

  void load_cmap(const detail::ByteReader& cmap)
  {
    const std::uint16_t n = cmap.u16(2);
    // Full-repertoire Unicode subtables first, then BMP ones.
    int best_rank = -1;
    std::uint32_t best_offset = 0;
    for (std::uint16_t i = 0; i < n; ++i) {
      const std::size_t rec = 4 + 8u * i;
      const std::uint16_t platform = cmap.u16(rec);
      const std::uint16_t encoding = cmap.u16(rec + 2);
      const std::uint32_t offset = cmap.u32(rec + 4);
      const std::uint16_t format = cmap.u16(offset);
      int rank = -1;
      const bool unicode = platform == 0 || (platform == 3 && (encoding == 1 || encoding == 10));
      if (!unicode) continue;
      if (format == 12) rank = 3;
      else if (format == 4) rank = 2;
      else if (format == 6 || format == 0) rank = 1;
      if (rank > best_rank) {
        best_rank = rank;
        best_offset = offset;
      }
    }
    if (best_rank < 0) throw FontError("no supported Unicode cmap subtable");

    const std::uint16_t format = cmap.u16(best_offset);
    if (format == 0) {
      CmapRange r{255, 0, {}};
      for (int c = 0; c < 256; ++c) r.mapped.push_back(cmap.u8(best_offset + 6 + c));
      cmap_[0] = std::move(r);
    } else if (format == 6) {
      const std::uint16_t first = cmap.u16(best_offset + 6);
      const std::uint16_t count = cmap.u16(best_offset + 8);
      if (count == 0) return;
      CmapRange r{static_cast<char32_t>(first + count - 1), 0, {}};
      for (std::uint16_t k = 0; k < count; ++k) r.mapped.push_back(cmap.u16(best_offset + 10 + 2u * k));
      cmap_[first] = std::move(r);
    } else if (format == 4) {
      load_format4(cmap, best_offset);
    } else {
      const std::uint32_t groups = cmap.u32(best_offset + 12);
      for (std::uint32_t g = 0; g < groups; ++g) {
        const std::size_t rec = best_offset + 16 + 12u * g;
        const std::uint32_t start = cmap.u32(rec);
        const std::uint32_t end = cmap.u32(rec + 4);
        if (end < start || end > 0x10FFFF) continue;
        cmap_[start] = CmapRange{end, cmap.u32(rec + 8), {}};
      }
    }
  }

  void load_format4(const detail::ByteReader& cmap, std::size_t off)
  {
    const std::uint16_t seg_count = cmap.u16(off + 6) / 2;
    const std::size_t ends = off + 14;
    const std::size_t starts = ends + 2u * seg_count + 2;
    const std::size_t deltas = starts + 2u * seg_count;
    const std::size_t range_offsets = deltas + 2u * seg_count;
    for (std::uint16_t s = 0; s < seg_count; ++s) {
      const std::uint16_t end = cmap.u16(ends + 2u * s);
      const std::uint16_t start = cmap.u16(starts + 2u * s);
      const std::uint16_t delta = cmap.u16(deltas + 2u * s);
      const std::uint16_t ro = cmap.u16(range_offsets + 2u * s);
      if (start > end || start == 0xFFFF) continue;
      CmapRange r{end, 0, {}};
      for (std::uint32_t c = start; c <= end; ++c) {
        std::uint16_t gid;
        if (ro == 0) {
          gid = static_cast<std::uint16_t>(c + delta);
        } else {
          const std::size_t addr = range_offsets + 2u * s + ro + 2u * (c - start);
          const std::uint16_t raw = cmap.u16(addr);
          gid = raw == 0 ? 0 : static_cast<std::uint16_t>(raw + delta);
        }
        r.mapped.push_back(gid);
      }
      cmap_[start] = std::move(r);
    }
  }

  // Appends the glyph's contours transformed by [a b; c d] + (dx, dy).
  void append_outline(std::uint16_t gid, double a, double b, double c, double d, double dx, double dy,
                      int depth, GlyphOutline& out) const
  {
    if (depth > 8) throw FontError("composite glyph nesting too deep");
    if (gid >= num_glyphs_) return;
    const std::uint32_t start = glyph_offsets_[gid];
    const std::uint32_t end = glyph_offsets_[gid + 1];
    if (end <= start) return; // no outline
    if (end > glyf_length_) throw FontError("glyph data outside 'glyf'");
    const detail::ByteReader g(bytes_, glyf_begin_ + start, glyf_begin_ + end);
    const std::int16_t n_contours = g.i16(0);

    auto emit = [&](double x, double y) {
      return std::pair{a * x + c * y + dx, b * x + d * y + dy};
    };

    if (n_contours >= 0) {
      std::vector<std::uint16_t> end_points(static_cast<std::size_t>(n_contours));
      for (int k = 0; k < n_contours; ++k) end_points[k] = g.u16(10 + 2u * k);
      const std::size_t n_points = n_contours ? end_points.back() + 1u : 0u;
      std::size_t p = 10 + 2u * n_contours;
      p += 2 + g.u16(p); // skip instructions

      std::vector<std::uint8_t> flags;
      flags.reserve(n_points);
      while (flags.size() < n_points) {
        const std::uint8_t f = g.u8(p++);
        flags.push_back(f);
        if (f & 0x08) {
          for (std::uint8_t r = g.u8(p++); r > 0 && flags.size() < n_points; --r) flags.push_back(f);
        }
      }
      std::vector<std::int32_t> xs(n_points), ys(n_points);
      std::int32_t v = 0;
      for (std::size_t i = 0; i < n_points; ++i) {
        const std::uint8_t f = flags[i];
        if (f & 0x02) {
          const std::int32_t dv = g.u8(p++);
          v += (f & 0x10) ? dv : -dv;
        } else if (!(f & 0x10)) {
          v += g.i16(p);
          p += 2;
        }
        xs[i] = v;
      }
      v = 0;
      for (std::size_t i = 0; i < n_points; ++i) {
        const std::uint8_t f = flags[i];
        if (f & 0x04) {
          const std::int32_t dv = g.u8(p++);
          v += (f & 0x20) ? dv : -dv;
        } else if (!(f & 0x20)) {
          v += g.i16(p);
          p += 2;
        }
        ys[i] = v;
      }
      std::size_t first = 0;
      for (int k = 0; k < n_contours; ++k) {
        Contour contour;
        for (std::size_t i = first; i <= end_points[k] && i < n_points; ++i) {
          const auto [x, y] = emit(xs[i], ys[i]);
          contour.push_back({x, y, (flags[i] & 0x01) != 0});
        }
        first = end_points[k] + 1u;
        if (!contour.empty()) out.contours.push_back(std::move(contour));
      }
      return;
    }

    std::size_t p = 10;
    std::uint16_t flags;
    do {
      flags = g.u16(p);
      const std::uint16_t child = g.u16(p + 2);
      p += 4;
      double ox = 0.0, oy = 0.0;
      if (flags & detail::kArgsAreWords) {
        ox = g.i16(p);
        oy = g.i16(p + 2);
        p += 4;
      } else {
        ox = static_cast<std::int8_t>(g.u8(p));
        oy = static_cast<std::int8_t>(g.u8(p + 1));
        p += 2;
      }
      // Point-matched placement is not supported; such components sit at
      // the origin.
      if (!(flags & detail::kArgsAreXY)) ox = oy = 0.0;
      double ca = 1.0, cb = 0.0, cc = 0.0, cd = 1.0;
      auto f2dot14 = [&](std::size_t off) { return g.i16(off) / 16384.0; };
      if (flags & detail::kHaveScale) {
        ca = cd = f2dot14(p);
        p += 2;
      } else if (flags & detail::kHaveXYScale) {
        ca = f2dot14(p);
        cd = f2dot14(p + 2);
        p += 4;
      } else if (flags & detail::kHaveTwoByTwo) {
        ca = f2dot14(p);
        cb = f2dot14(p + 2);
        cc = f2dot14(p + 4);
        cd = f2dot14(p + 6);
        p += 8;
      }
      // Compose child transform with ours: ours(child(pt) + offset).
      const auto [tx, ty] = emit(ox, oy);
      append_outline(child, a * ca + c * cb, b * ca + d * cb, a * cc + c * cd, b * cc + d * cd, tx, ty,
                     depth + 1, out);
    } while (flags & detail::kMoreComponents);
  }

  std::vector<std::uint8_t> bytes_;
  int units_per_em_ = 0;
  int ascender_ = 0;
  int descender_ = 0;
  int line_gap_ = 0;
  int num_glyphs_ = 0;
  std::vector<std::uint16_t> advances_;
  std::vector<std::uint32_t> glyph_offsets_;
  std::uint32_t glyf_begin_ = 0;
  std::uint32_t glyf_length_ = 0;
  std::map<char32_t, CmapRange> cmap_;
};

/// Codepoint that many fonts map to their missing-character box.
inline constexpr char32_t kMissingGlyphAlias = 0x1D;

/// Whether the font really draws `cp`: the character map must give a glyph
/// other than .notdef, and that glyph's outline must be non-empty and differ
/// from the missing-glyph box (the .notdef outline, and the outline of
/// U+001D when the font maps it).
inline bool supports_char(const FontFile& font, char32_t cp)
{
  const std::uint16_t gid = font.glyph_index(cp);
  if (gid == 0) return false;
  const GlyphOutline o = font.outline(gid);
  if (o.empty()) return false;
  if (o == font.outline(0)) return false;
  const std::uint16_t alias = font.glyph_index(kMissingGlyphAlias);
  if (alias != 0 && cp != kMissingGlyphAlias && (alias == gid || o == font.outline(alias))) return false;
  return true;
}

} // namespace mangaseg::synth

#endif
