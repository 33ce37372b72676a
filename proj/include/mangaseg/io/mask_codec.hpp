#ifndef MANGASEG_IO_MASK_CODEC_HPP_
#define MANGASEG_IO_MASK_CODEC_HPP_

#include <array>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "mangaseg/error.hpp"
#include "mangaseg/grid.hpp"
#include "mangaseg/io/png.hpp"

namespace mangaseg::io
{

// Binary masks: grayscale, >= 128 is text; written as 0 / 255.
// Three-class masks: RGB palette, exact match unless a fuzzy tolerance is
// given.

inline constexpr std::uint8_t kTextThreshold = 128;
inline constexpr Rgb kNonTextColor{255, 255, 0};
inline constexpr Rgb kEasyColor{0, 0, 0};
inline constexpr Rgb kHardColor{255, 0, 255};

inline BinaryMask decode_binary(const GrayImage& img)
{
  return mask_where(img, [](std::uint8_t v) { return v >= kTextThreshold; });
}

inline GrayImage encode_binary(const BinaryMask& mask)
{
  GrayImage out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) out[i] = mask[i] ? 255 : 0;
  return out;
}

inline Rgb class_color(TextClass c)
{
  switch (c) {
  case TextClass::Easy: return kEasyColor;
  case TextClass::Hard: return kHardColor;
  default: return kNonTextColor;
  }
}

/// Maps palette colours to classes. With `fuzzy_tolerance` > 0 a colour
/// snaps to the nearest palette entry whose largest channel difference is
/// within the tolerance; anything else is rejected.
inline ClassMask decode_class(const RgbImage& img, int fuzzy_tolerance = 0)
{
  static constexpr std::array<std::pair<Rgb, TextClass>, 3> palette = {{
    {kNonTextColor, TextClass::NonText},
    {kEasyColor, TextClass::Easy},
    {kHardColor, TextClass::Hard},
  }};
  ClassMask out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb c = img[i];
    int best = -1;
    int best_dist = fuzzy_tolerance + 1;
    for (std::size_t k = 0; k < palette.size(); ++k) {
      const Rgb p = palette[k].first;
      const int d = std::max({std::abs(c.r - p.r), std::abs(c.g - p.g), std::abs(c.b - p.b)});
      if (d < best_dist) {
        best_dist = d;
        best = static_cast<int>(k);
      }
    }
    if (best < 0) {
      const int w = img.width();
      throw InputError("unknown mask colour (" + std::to_string(c.r) + "," + std::to_string(c.g) +
                       "," + std::to_string(c.b) + ") at (" + std::to_string(static_cast<int>(i) % w) +
                       "," + std::to_string(static_cast<int>(i) / w) + ")");
    }
    out[i] = palette[static_cast<std::size_t>(best)].second;
  }
  return out;
}

inline RgbImage encode_class(const ClassMask& mask)
{
  RgbImage out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) out[i] = class_color(mask[i]);
  return out;
}

/// Ground truth from disk: colour files use the class palette, grayscale
/// files are binary and count as easy text.
inline ClassMask load_class_mask(const std::filesystem::path& path, int fuzzy_tolerance = 0)
{
  if (png_is_color(path)) {
    try {
      return decode_class(read_rgb(path), fuzzy_tolerance);
    } catch (const InputError& e) {
      throw InputError(path.string() + ": " + e.what());
    }
  }
  const BinaryMask bin = decode_binary(read_gray(path));
  ClassMask out(bin.width(), bin.height());
  for (std::size_t i = 0; i < bin.size(); ++i) out[i] = bin[i] ? TextClass::Easy : TextClass::NonText;
  return out;
}

/// Prediction from disk: grayscale files are thresholded, colour files must
/// use the class palette and are projected to text / non-text.
inline BinaryMask load_binary_mask(const std::filesystem::path& path, int fuzzy_tolerance = 0)
{
  if (png_is_color(path)) return load_class_mask(path, fuzzy_tolerance).to_binary();
  return decode_binary(read_gray(path));
}

inline void save_binary_mask(const std::filesystem::path& path, const BinaryMask& mask)
{
  write_gray(path, encode_binary(mask));
}

inline void save_class_mask(const std::filesystem::path& path, const ClassMask& mask)
{
  write_rgb(path, encode_class(mask));
}

} // namespace mangaseg::io

#endif
