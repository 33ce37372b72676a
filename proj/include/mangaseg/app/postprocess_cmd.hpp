#ifndef MANGASEG_APP_POSTPROCESS_CMD_HPP_
#define MANGASEG_APP_POSTPROCESS_CMD_HPP_

#include "mangaseg/app/common.hpp"
#include "mangaseg/io/mask_codec.hpp"
#include "mangaseg/postprocess.hpp"

namespace mangaseg::app
{

struct DenoiseOptions
{
  /// Mask files or directories of masks.
  std::vector<fs::path> inputs;
  fs::path out_dir;
  NoiseParams params;
  int jobs = 1;
};

/// Writes each denoised mask to out_dir under its original file name.
inline CommandResult run_denoise(const DenoiseOptions& opt)
{
  opt.params.validate();
  const auto files = expand_png_inputs(opt.inputs);
  CommandResult out;
  if (files.empty()) out.errors.push_back("no input masks");
  fs::create_directories(opt.out_dir);
  const auto failures = parallel_for(files.size(), opt.jobs, [&](std::size_t i) {
    const BinaryMask mask = io::load_binary_mask(files[i]);
    io::save_binary_mask(opt.out_dir / files[i].filename(), remove_noise(mask, opt.params));
  });
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!failures[i].empty()) out.errors.push_back(files[i].string() + ": " + failures[i]);
  }
  return out;
}

struct ExpandOptions
{
  /// Page image and mask: both files, or both directories paired by stem.
  fs::path image;
  fs::path mask;
  fs::path out_dir;
  ExpandParams params;
  /// Output the union of the input mask and the expansion.
  bool union_with_input = false;
  int jobs = 1;
};

inline BinaryMask expand_file(const fs::path& image, const fs::path& mask, const ExpandParams& params,
                              bool union_with_input)
{
  const GrayImage gray = io::to_gray(io::read_rgb(image));
  const BinaryMask in = io::load_binary_mask(mask);
  BinaryMask out = expand_partial(gray, in, params);
  if (union_with_input) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = out[i] | in[i];
  }
  return out;
}

/// Writes each expanded mask to out_dir under the mask's file name.
inline CommandResult run_expand(const ExpandOptions& opt)
{
  opt.params.validate();
  std::vector<std::pair<fs::path, fs::path>> pairs;
  CommandResult out;
  if (fs::is_directory(opt.image) != fs::is_directory(opt.mask)) {
    throw UsageError("--image and --mask must both be files or both be directories");
  }
  if (fs::is_directory(opt.mask)) {
    const auto images = png_by_stem(opt.image);
    for (const auto& [stem, path] : png_by_stem(opt.mask)) {
      auto it = images.find(stem);
      if (it == images.end()) out.warnings.push_back("no page image for mask " + path.string());
      else pairs.emplace_back(it->second, path);
    }
  } else {
    pairs.emplace_back(opt.image, opt.mask);
  }
  fs::create_directories(opt.out_dir);
  const auto failures = parallel_for(pairs.size(), opt.jobs, [&](std::size_t i) {
    const auto& [image, mask] = pairs[i];
    io::save_binary_mask(opt.out_dir / mask.filename(), expand_file(image, mask, opt.params, opt.union_with_input));
  });
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!failures[i].empty()) out.errors.push_back(pairs[i].second.string() + ": " + failures[i]);
  }
  if (pairs.empty()) out.errors.push_back("no image/mask pairs");
  return out;
}

} // namespace mangaseg::app

#endif
