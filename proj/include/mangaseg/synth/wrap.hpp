#ifndef MANGASEG_SYNTH_WRAP_HPP_
#define MANGASEG_SYNTH_WRAP_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mangaseg::synth
{

struct TextExtent
{
  std::int64_t width = 0;
  std::int64_t height = 0;
};

/// Pixel extent of a string in some font at some size. Implementations must
/// be monotone in width when a character is appended.
class TextMeasurer
{
public:
  virtual ~TextMeasurer() = default;
  virtual TextExtent measure(std::u32string_view text) const = 0;
};

/// Greedy pixel-exact wrapping: each line is the longest prefix of the
/// remaining text that fits in max_width, measured one character at a time.
/// A line is only emitted while the accumulated line heights stay within
/// max_height; whatever does not fit is dropped. A character wider than
/// max_width ends the text.
inline std::vector<std::u32string> text_wrap_exact(const TextMeasurer& font, std::u32string_view text,
                                                   std::int64_t max_width, std::int64_t max_height)
{
  std::vector<std::u32string> lines;
  const std::size_t n = text.size();
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t height = 0;
  while (j <= n) {
    const std::int64_t w = font.measure(text.substr(i, j + 1 - i)).width;
    if (w > max_width || j == n) {
      height += font.measure(text.substr(i, j - i)).height;
      if (height <= max_height && j > i) {
        lines.emplace_back(text.substr(i, j - i));
        i = j;
        if (j == n) break;
      } else {
        break;
      }
    } else {
      ++j;
    }
  }
  return lines;
}

/// Same output as text_wrap_exact for additive measurers (the width of a
/// concatenation is the sum of the widths), with far fewer measure calls
/// when the width of 'a' is representative of the text: each line starts
/// from a chunk of max_width / width('a') characters, then walks forward
/// and back one character at a time.
inline std::vector<std::u32string> text_wrap_fast(const TextMeasurer& font, std::u32string_view text,
                                                  std::int64_t max_width, std::int64_t max_height)
{
  const std::int64_t ref = font.measure(U"a").width;
  const std::size_t estimate =
    ref > 0 && max_width > 0 ? static_cast<std::size_t>(max_width / ref) : 0;
  std::vector<std::u32string> lines;
  const std::size_t n = text.size();
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t height = 0;
  while (i < n) {
    i = j;
    if (i == n) break;
    j = std::min(n, i + estimate);
    std::int64_t width = font.measure(text.substr(i, j - i)).width;
    while (j < n && width <= max_width) {
      width += font.measure(text.substr(j, 1)).width;
      ++j;
    }
    while (width > max_width && j > i) {
      --j;
      width -= font.measure(text.substr(j, 1)).width;
    }
    // Not even one character fits: the rest of the text is dropped.
    if (j == i) break;
    height += font.measure(text.substr(i, j - i)).height;
    if (height > max_height) break;
    lines.emplace_back(text.substr(i, j - i));
  }
  return lines;
}

} // namespace mangaseg::synth

#endif
