#ifndef MANGASEG_LOSS_HPP_
#define MANGASEG_LOSS_HPP_

#include <algorithm>
#include <cmath>

#include "mangaseg/grid.hpp"

namespace mangaseg
{

// Reference values for the segmentation losses, for checking a training
// stack numerically. Forward values only.

inline constexpr double kDiceSmooth = 1e-6;
inline constexpr double kProbEpsilon = 1e-7;

/// (2 * sum(p * g) + smooth) / (sum(p) + sum(g) + smooth).
inline double dice_coefficient(const ProbMap& p, const BinaryMask& gt, double smooth = kDiceSmooth)
{
  detail::require_same_size(p, gt, "dice_coefficient");
  if (!(smooth > 0.0)) throw InputError("dice smooth term must be positive");
  double inter = 0.0, sp = 0.0, sg = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double g = gt[i] ? 1.0 : 0.0;
    inter += p[i] * g;
    sp += p[i];
    sg += g;
  }
  return (2.0 * inter + smooth) / (sp + sg + smooth);
}

/// Mean over pixels of -(1 - p_t)^gamma * log(p_t), with p_t the probability
/// given to the true class and probabilities clamped to [eps, 1 - eps].
/// No alpha balancing term.
inline double focal_loss(const ProbMap& p, const BinaryMask& gt, double gamma)
{
  detail::require_same_size(p, gt, "focal_loss");
  if (!(gamma >= 0.0)) throw InputError("focal gamma must be >= 0");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(p[i], kProbEpsilon, 1.0 - kProbEpsilon);
    const double pt = gt[i] ? q : 1.0 - q;
    sum += -std::pow(1.0 - pt, gamma) * std::log(pt);
  }
  return sum / static_cast<double>(p.size());
}

/// Mean binary cross-entropy with the same clamping as focal_loss.
inline double bce_loss(const ProbMap& p, const BinaryMask& gt)
{
  detail::require_same_size(p, gt, "bce_loss");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double q = std::clamp(p[i], kProbEpsilon, 1.0 - kProbEpsilon);
    sum += gt[i] ? -std::log(q) : -std::log(1.0 - q);
  }
  return sum / static_cast<double>(p.size());
}

/// alpha * focal(gamma) - log(dice coefficient). Mix(0, 1) is plain
/// log-dice, which is 0 for a perfect prediction.
inline double mix_loss(const ProbMap& p, const BinaryMask& gt, double alpha, double gamma)
{
  if (!(alpha >= 0.0)) throw InputError("mix alpha must be >= 0");
  return alpha * focal_loss(p, gt, gamma) - std::log(dice_coefficient(p, gt));
}

} // namespace mangaseg

#endif
