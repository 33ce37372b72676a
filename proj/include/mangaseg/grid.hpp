#ifndef MANGASEG_GRID_HPP_
#define MANGASEG_GRID_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mangaseg/error.hpp"

namespace mangaseg
{

/// Row-major 2-D raster. Dimensions are fixed at construction and must be
/// at least 1x1.
template <typename T>
class Grid
{
public:
  using value_type = T;

  Grid(int width, int height, T fill = T{})
    : width_(width), height_(height)
  {
    if (width < 1 || height < 1) {
      throw InputError("grid dimensions must be at least 1x1, got " + std::to_string(width) +
                       "x" + std::to_string(height));
    }
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Grid(int width, int height, std::vector<T> data)
    : Grid(width, height)
  {
    if (data.size() != data_.size()) {
      throw InputError("grid data length does not match width x height");
    }
    data_ = std::move(data);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }

  bool contains(int x, int y) const noexcept
  {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  std::size_t index(int x, int y) const noexcept
  {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  T& operator[](std::size_t i) noexcept { return data_[i]; }
  const T& operator[](std::size_t i) const noexcept { return data_[i]; }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  friend bool operator==(const Grid&, const Grid&) = default;

private:
  int width_;
  int height_;
  std::vector<T> data_;
};

/// Text/background raster. Cells hold 0 or 1; use set() to keep that true.
class BinaryMask : public Grid<std::uint8_t>
{
public:
  BinaryMask(int width, int height, bool fill = false)
    : Grid(width, height, fill ? 1 : 0)
  {
  }

  bool at(int x, int y) const noexcept { return (*this)(x, y) != 0; }
  void set(int x, int y, bool v) noexcept { (*this)(x, y) = v ? 1 : 0; }

  std::size_t count() const noexcept
  {
    auto d = data();
    return static_cast<std::size_t>(std::count(d.begin(), d.end(), std::uint8_t{1}));
  }

  bool empty() const noexcept { return count() == 0; }

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

enum class TextClass : std::uint8_t
{
  NonText = 0,
  Easy = 1,
  Hard = 2,
};

inline const char* to_string(TextClass c)
{
  switch (c) {
  case TextClass::NonText: return "nontext";
  case TextClass::Easy: return "easy";
  case TextClass::Hard: return "hard";
  }
  return "?";
}

/// Three-class ground truth: non-text, easy (inside balloons), hard (outside).
class ClassMask : public Grid<TextClass>
{
public:
  ClassMask(int width, int height, TextClass fill = TextClass::NonText)
    : Grid(width, height, fill)
  {
  }

  BinaryMask to_binary() const
  {
    BinaryMask out(width(), height());
    for (std::size_t i = 0; i < size(); ++i) {
      out[i] = (*this)[i] != TextClass::NonText ? 1 : 0;
    }
    return out;
  }

  friend bool operator==(const ClassMask&, const ClassMask&) = default;
};

/// Per-pixel component labels. 0 is background; positive labels run 1..n.
class LabelMap : public Grid<std::int32_t>
{
public:
  LabelMap(int width, int height)
    : Grid(width, height, 0)
  {
  }

  int n_components() const noexcept { return n_components_; }
  void set_n_components(int n) noexcept { n_components_ = n; }

  friend bool operator==(const LabelMap&, const LabelMap&) = default;

private:
  int n_components_ = 0;
};

struct Rgb
{
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

using RgbImage = Grid<Rgb>;
using GrayImage = Grid<std::uint8_t>;

/// Per-pixel text probabilities in [0, 1].
class ProbMap : public Grid<double>
{
public:
  ProbMap(int width, int height, double fill = 0.0)
    : Grid(width, height, fill)
  {
  }

  ProbMap(int width, int height, std::vector<double> values)
    : Grid(width, height, std::move(values))
  {
    validate();
  }

  void validate() const
  {
    for (double v : data()) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw InputError("probability value outside [0, 1]");
      }
    }
  }
};

/// Projects a boolean predicate over another grid into a mask.
template <typename G, typename Pred>
BinaryMask mask_where(const G& grid, Pred pred)
{
  BinaryMask out(grid.width(), grid.height());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out[i] = pred(grid[i]) ? 1 : 0;
  }
  return out;
}

} // namespace mangaseg

#endif
