#ifndef MANGASEG_IO_PNG_HPP_
#define MANGASEG_IO_PNG_HPP_

#include <png.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "mangaseg/error.hpp"
#include "mangaseg/grid.hpp"

namespace mangaseg::io
{

/// Decoded 8-bit PNG: 1 channel (gray) or 3 (RGB), row-major, interleaved.
struct PngPixels
{
  int width = 0;
  int height = 0;
  int channels = 0;
  /// Whether the file itself stores colour (before any conversion).
  bool source_is_color = false;
  std::vector<std::uint8_t> bytes;
};

namespace detail
{

struct PngImage
{
  png_image img{};

  PngImage()
  {
    img.version = PNG_IMAGE_VERSION;
  }
  ~PngImage() { png_image_free(&img); }
  PngImage(const PngImage&) = delete;
  PngImage& operator=(const PngImage&) = delete;
};

} // namespace detail

/// Reads a PNG converted to gray (channels = 1) or RGB (channels = 3). Alpha
/// is composited over black by libpng's simplified reader.
inline PngPixels read_png(const std::filesystem::path& path, int channels)
{
  detail::PngImage p;
  if (!png_image_begin_read_from_file(&p.img, path.c_str())) {
    throw InputError("cannot read PNG " + path.string() + ": " + p.img.message);
  }
  PngPixels out;
  out.source_is_color = (p.img.format & PNG_FORMAT_FLAG_COLOR) != 0;
  p.img.format = channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  out.width = static_cast<int>(p.img.width);
  out.height = static_cast<int>(p.img.height);
  out.channels = channels;
  out.bytes.resize(PNG_IMAGE_SIZE(p.img));
  if (!png_image_finish_read(&p.img, nullptr, out.bytes.data(), 0, nullptr)) {
    throw InputError("cannot decode PNG " + path.string() + ": " + p.img.message);
  }
  if (out.width < 1 || out.height < 1) throw InputError("empty PNG " + path.string());
  return out;
}

/// Whether the file stores colour channels.
inline bool png_is_color(const std::filesystem::path& path)
{
  detail::PngImage p;
  if (!png_image_begin_read_from_file(&p.img, path.c_str())) {
    throw InputError("cannot read PNG " + path.string() + ": " + p.img.message);
  }
  return (p.img.format & PNG_FORMAT_FLAG_COLOR) != 0;
}

inline std::vector<std::uint8_t> encode_png(int width, int height, int channels,
                                            const std::vector<std::uint8_t>& bytes)
{
  detail::PngImage p;
  p.img.width = static_cast<png_uint_32>(width);
  p.img.height = static_cast<png_uint_32>(height);
  p.img.format = channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(p.img, size, 0, bytes.data(), 0, nullptr)) {
    throw InputError(std::string("cannot size PNG: ") + p.img.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&p.img, out.data(), &size, 0, bytes.data(), 0, nullptr)) {
    throw InputError(std::string("cannot encode PNG: ") + p.img.message);
  }
  out.resize(size);
  return out;
}

/// Writes through a temporary sibling file and renames it into place.
inline void write_file_atomic(const std::filesystem::path& path, const void* data, std::size_t size)
{
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open for writing: " + tmp.string());
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    if (!out) throw InputError("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

inline void write_file_atomic(const std::filesystem::path& path, const std::string& text)
{
  write_file_atomic(path, text.data(), text.size());
}

inline GrayImage read_gray(const std::filesystem::path& path)
{
  auto px = read_png(path, 1);
  return GrayImage(px.width, px.height, std::move(px.bytes));
}

inline RgbImage read_rgb(const std::filesystem::path& path)
{
  const auto px = read_png(path, 3);
  RgbImage img(px.width, px.height);
  for (std::size_t i = 0; i < img.size(); ++i) {
    img[i] = {px.bytes[3 * i], px.bytes[3 * i + 1], px.bytes[3 * i + 2]};
  }
  return img;
}

inline void write_gray(const std::filesystem::path& path, const GrayImage& img)
{
  const std::vector<std::uint8_t> bytes(img.data().begin(), img.data().end());
  const auto png = encode_png(img.width(), img.height(), 1, bytes);
  write_file_atomic(path, png.data(), png.size());
}

inline std::vector<std::uint8_t> rgb_bytes(const RgbImage& img)
{
  std::vector<std::uint8_t> bytes;
  bytes.reserve(img.size() * 3);
  for (const Rgb& c : img.data()) {
    bytes.push_back(c.r);
    bytes.push_back(c.g);
    bytes.push_back(c.b);
  }
  return bytes;
}

inline void write_rgb(const std::filesystem::path& path, const RgbImage& img)
{
  const auto png = encode_png(img.width(), img.height(), 3, rgb_bytes(img));
  write_file_atomic(path, png.data(), png.size());
}

/// Luma (ITU-R BT.601, integer) of an RGB image.
inline GrayImage to_gray(const RgbImage& img)
{
  GrayImage out(img.width(), img.height());
  for (std::size_t i = 0; i < img.size(); ++i) {
    const Rgb c = img[i];
    out[i] = static_cast<std::uint8_t>((299 * c.r + 587 * c.g + 114 * c.b + 500) / 1000);
  }
  return out;
}

} // namespace mangaseg::io

#endif
