#ifndef MANGASEG_APP_LOSS_CMD_HPP_
#define MANGASEG_APP_LOSS_CMD_HPP_

#include <nlohmann/json.hpp>

#include "mangaseg/app/common.hpp"
#include "mangaseg/io/mask_codec.hpp"
#include "mangaseg/loss.hpp"

namespace mangaseg::app
{

struct LossOptions
{
  fs::path prob;
  fs::path gt;
  double alpha = 0.0;
  double gamma = 1.0;
  int fuzzy_palette = 0;
};

/// 8-bit grayscale PNG to probabilities (value / 255).
inline ProbMap load_prob_map(const fs::path& path)
{
  const GrayImage g = io::read_gray(path);
  ProbMap p(g.width(), g.height());
  for (std::size_t i = 0; i < g.size(); ++i) p[i] = g[i] / 255.0;
  return p;
}

inline nlohmann::json run_loss(const LossOptions& opt)
{
  const ProbMap p = load_prob_map(opt.prob);
  const BinaryMask gt = io::load_binary_mask(opt.gt, opt.fuzzy_palette);
  return {{"dice", dice_coefficient(p, gt)},
          {"focal", focal_loss(p, gt, opt.gamma)},
          {"bce", bce_loss(p, gt)},
          {"mix", mix_loss(p, gt, opt.alpha, opt.gamma)},
          {"alpha", opt.alpha},
          {"gamma", opt.gamma}};
}

} // namespace mangaseg::app

#endif
