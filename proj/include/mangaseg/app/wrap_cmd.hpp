#ifndef MANGASEG_APP_WRAP_CMD_HPP_
#define MANGASEG_APP_WRAP_CMD_HPP_

#include <nlohmann/json.hpp>

#include "mangaseg/app/common.hpp"
#include "mangaseg/synth/font_asset.hpp"

namespace mangaseg::app
{

/// Forwards to another measurer and counts the calls.
class CountingMeasurer : public synth::TextMeasurer
{
public:
  explicit CountingMeasurer(const synth::TextMeasurer& inner) : inner_(&inner) {}

  synth::TextExtent measure(std::u32string_view text) const override
  {
    ++calls_;
    return inner_->measure(text);
  }

  std::int64_t calls() const noexcept { return calls_; }

private:
  const synth::TextMeasurer* inner_;
  mutable std::int64_t calls_ = 0;
};

struct WrapOptions
{
  fs::path font;
  double size = 24.0;
  std::int64_t max_width = 0;
  std::int64_t max_height = 0;
  std::string text;
  bool exact = false;
};

inline nlohmann::json run_wrap(const WrapOptions& opt)
{
  if (opt.size <= 0.0) throw UsageError("--size must be positive");
  const auto font = synth::FontFile::from_file(opt.font);
  const synth::FontMeasurer measurer(font, opt.size);
  const CountingMeasurer counting(measurer);
  const std::u32string text = synth::from_utf8(opt.text);
  const auto lines = opt.exact ? synth::text_wrap_exact(counting, text, opt.max_width, opt.max_height)
                               : synth::text_wrap_fast(counting, text, opt.max_width, opt.max_height);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : lines) arr.push_back(synth::to_utf8(l));
  return {{"algorithm", opt.exact ? "exact" : "fast"}, {"lines", arr}, {"measure_calls", counting.calls()}};
}

} // namespace mangaseg::app

#endif
