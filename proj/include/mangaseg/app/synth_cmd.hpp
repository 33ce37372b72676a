#ifndef MANGASEG_APP_SYNTH_CMD_HPP_
#define MANGASEG_APP_SYNTH_CMD_HPP_

#include "mangaseg/app/common.hpp"
#include "mangaseg/io/mask_codec.hpp"
#include "mangaseg/io/report_json.hpp"
#include "mangaseg/synth/textify.hpp"

namespace mangaseg::app
{

struct SynthOptions
{
  fs::path images_dir;
  fs::path fonts_dir;
  fs::path out_dir;
  int count = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  synth::TextifyConfig config;
};

/// Loads every TrueType font in `dir`; unreadable or empty fonts become
/// warnings.
inline std::vector<synth::FontAsset> load_fonts(const fs::path& dir, std::vector<std::string>& warnings)
{
  std::vector<synth::FontAsset> fonts;
  for (const auto& path : list_files(dir, {".ttf", ".ttc", ".otf"})) {
    try {
      auto asset = synth::FontAsset::load(path.filename().string(), synth::FontFile::from_file(path));
      if (asset.usable()) fonts.push_back(std::move(asset));
      else warnings.push_back("font supports no pool codepoint: " + path.string());
    } catch (const FontError& e) {
      warnings.push_back(e.what());
    }
  }
  return fonts;
}

/// Pair k overlays text on image k mod n with seed + k and writes
/// `{stem}_{seed+k}.png`, `.mask.png` and `.manifest.json`.
inline CommandResult run_synth(const SynthOptions& opt)
{
  if (opt.count < 0) throw UsageError("count must be >= 0");
  CommandResult out;
  fs::create_directories(opt.out_dir);
  if (opt.count == 0) return out;

  const auto images = list_files(opt.images_dir, {".png"});
  if (images.empty()) throw InputError("no PNG images in " + opt.images_dir.string());
  const auto fonts = load_fonts(opt.fonts_dir, out.warnings);
  if (fonts.empty()) throw ConfigError("no usable font in " + opt.fonts_dir.string());

  const auto n = static_cast<std::size_t>(opt.count);
  const auto failures = parallel_for(n, opt.jobs, [&](std::size_t k) {
    const fs::path& source = images[k % images.size()];
    const std::uint64_t seed = opt.seed + k;
    synth::Rng rng(seed);
    const auto result = synth::textify(io::read_rgb(source), fonts, rng, opt.config);
    const std::string base = source.stem().string() + "_" + std::to_string(seed);
    io::write_rgb(opt.out_dir / (base + ".png"), result.image);
    io::save_binary_mask(opt.out_dir / (base + ".mask.png"), result.mask);
    io::write_file_atomic(opt.out_dir / (base + ".manifest.json"),
                          io::manifest_json(seed, source.filename().string(), result).dump(2) + "\n");
  });
  for (std::size_t k = 0; k < n; ++k) {
    if (!failures[k].empty()) out.errors.push_back("pair " + std::to_string(k) + ": " + failures[k]);
  }
  return out;
}

} // namespace mangaseg::app

#endif
