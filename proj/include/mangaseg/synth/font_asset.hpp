#ifndef MANGASEG_SYNTH_FONT_ASSET_HPP_
#define MANGASEG_SYNTH_FONT_ASSET_HPP_

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mangaseg/synth/truetype.hpp"
#include "mangaseg/synth/wrap.hpp"

namespace mangaseg::synth
{

struct CodepointRange
{
  char32_t first;
  char32_t last;
};

/// Default pool for random text: CJK unified ideographs, hiragana, katakana,
/// CJK punctuation, ASCII letters, digits and punctuation. 21275 codepoints.
inline const std::vector<CodepointRange>& default_codepoint_pool()
{
  static const std::vector<CodepointRange> pool = {
    {0x4E00, 0x9FFF}, // CJK unified ideographs
    {0x3041, 0x3096}, // hiragana
    {0x30A1, 0x30FA}, // katakana
    {0x3001, 0x300D}, // ideographic comma .. brackets
    {U'A', U'Z'},     {U'a', U'z'}, {U'0', U'9'},
    {0x21, 0x2F},     {0x3A, 0x40}, {0x5B, 0x60}, {0x7B, 0x7E},
  };
  return pool;
}

inline std::size_t pool_size(const std::vector<CodepointRange>& pool)
{
  std::size_t n = 0;
  for (const auto& r : pool) n += r.last - r.first + 1;
  return n;
}

/// A font with the pool codepoints it can genuinely draw.
struct FontAsset
{
  std::string id;
  std::shared_ptr<const FontFile> font;
  /// Ascending; never contains codepoints drawn as the missing glyph.
  std::vector<char32_t> supported;
  /// Mean advance over `supported`, in font units.
  double mean_advance = 0.0;

  static FontAsset load(std::string id, FontFile file,
                        const std::vector<CodepointRange>& pool = default_codepoint_pool())
  {
    FontAsset a;
    a.id = std::move(id);
    auto shared = std::make_shared<const FontFile>(std::move(file));
    std::vector<char32_t> mapped = shared->mapped_codepoints();
    double total = 0.0;
    for (char32_t cp : mapped) {
      bool in_pool = false;
      for (const auto& r : pool) in_pool = in_pool || (cp >= r.first && cp <= r.last);
      if (!in_pool || !supports_char(*shared, cp)) continue;
      a.supported.push_back(cp);
      total += shared->advance_width(shared->glyph_index(cp));
    }
    a.mean_advance = a.supported.empty() ? 0.0 : total / static_cast<double>(a.supported.size());
    a.font = std::move(shared);
    return a;
  }

  bool usable() const noexcept { return !supported.empty(); }
};

/// Horizontal metrics of a font at a pixel size. Width is the sum of
/// per-character rounded advances, so it is additive; height is the line
/// height regardless of content.
class FontMeasurer : public TextMeasurer
{
public:
  FontMeasurer(const FontFile& font, double pixel_size)
    : font_(&font), scale_(pixel_size / font.units_per_em())
  {
  }

  double scale() const noexcept { return scale_; }

  std::int64_t advance(char32_t cp) const
  {
    return std::llround(font_->advance_width(font_->glyph_index(cp)) * scale_);
  }

  std::int64_t line_height() const
  {
    return std::llround((font_->ascender() - font_->descender()) * scale_);
  }

  TextExtent measure(std::u32string_view text) const override
  {
    std::int64_t w = 0;
    for (char32_t cp : text) w += advance(cp);
    return {w, line_height()};
  }

private:
  const FontFile* font_;
  double scale_;
};

/// Metrics for top-to-bottom columns: a column's "width" is its length (one
/// line height per character) and its "height" is the column pitch.
class VerticalMeasurer : public TextMeasurer
{
public:
  VerticalMeasurer(std::int64_t cell, std::int64_t pitch) : cell_(cell), pitch_(pitch) {}

  TextExtent measure(std::u32string_view text) const override
  {
    return {cell_ * static_cast<std::int64_t>(text.size()), pitch_};
  }

private:
  std::int64_t cell_;
  std::int64_t pitch_;
};

inline std::string to_utf8(std::u32string_view s)
{
  std::string out;
  for (char32_t c : s) {
    if (c < 0x80) {
      out += static_cast<char>(c);
    } else if (c < 0x800) {
      out += static_cast<char>(0xC0 | (c >> 6));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else if (c < 0x10000) {
      out += static_cast<char>(0xE0 | (c >> 12));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (c >> 18));
      out += static_cast<char>(0x80 | ((c >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((c >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (c & 0x3F));
    }
  }
  return out;
}

/// Decodes UTF-8; malformed bytes become U+FFFD.
inline std::u32string from_utf8(std::string_view s)
{
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const auto b = static_cast<unsigned char>(s[i]);
    int len = b < 0x80 ? 1 : (b >> 5) == 0x6 ? 2 : (b >> 4) == 0xE ? 3 : (b >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
      out += U'�';
      ++i;
      continue;
    }
    char32_t c = len == 1 ? b : len == 2 ? (b & 0x1F) : len == 3 ? (b & 0x0F) : (b & 0x07);
    bool ok = true;
    for (int k = 1; k < len; ++k) {
      const auto cb = static_cast<unsigned char>(s[i + k]);
      ok = ok && (cb >> 6) == 0x2;
      c = (c << 6) | (cb & 0x3F);
    }
    out += ok ? c : U'�';
    i += ok ? len : 1;
  }
  return out;
}

} // namespace mangaseg::synth

#endif
