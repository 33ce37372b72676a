#ifndef MANGASEG_METRICS_HPP_
#define MANGASEG_METRICS_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mangaseg/components.hpp"
#include "mangaseg/grid.hpp"
#include "mangaseg/matching.hpp"

namespace mangaseg
{

// Every ratio in this file treats 0/0 as 0.

inline double safe_ratio(double num, double den) noexcept { return den > 0.0 ? num / den : 0.0; }

inline double harmonic_mean(double a, double b) noexcept
{
  return a + b > 0.0 ? 2.0 * a * b / (a + b) : 0.0;
}

enum class Mode : std::uint8_t
{
  Normal,
  Relaxed,
};

inline const char* to_string(Mode m) { return m == Mode::Normal ? "normal" : "relaxed"; }

struct RelaxConfig
{
  /// Erosion and dilation depth, in cross-element iterations.
  int iterations = 1;
};

struct PixelCounts
{
  std::int64_t tp_px = 0;
  std::int64_t fp_px = 0;
  std::int64_t fn_px = 0;
};

struct PixelMetrics
{
  PixelCounts counts;
  double precision = 0.0;
  double recall = 0.0;
  double pf1 = 0.0;
};

inline PixelMetrics pixel_metrics_from_counts(const PixelCounts& c)
{
  PixelMetrics m;
  m.counts = c;
  m.precision = safe_ratio(static_cast<double>(c.tp_px), static_cast<double>(c.tp_px + c.fp_px));
  m.recall = safe_ratio(static_cast<double>(c.tp_px), static_cast<double>(c.tp_px + c.fn_px));
  m.pf1 = harmonic_mean(m.precision, m.recall);
  return m;
}

inline PixelMetrics pixel_metrics(const BinaryMask& gt, const BinaryMask& pred)
{
  detail::require_same_size(gt, pred, "pixel_metrics");
  PixelCounts c;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    c.tp_px += (gt[i] && pred[i]) ? 1 : 0;
    c.fp_px += (!gt[i] && pred[i]) ? 1 : 0;
    c.fn_px += (gt[i] && !pred[i]) ? 1 : 0;
  }
  return pixel_metrics_from_counts(c);
}

struct ComponentMetrics
{
  int m = 0;
  int tp = 0;
  int fp = 0;
  int n_detections = 0;
  double r_quant = 0.0;
  double p_quant = 0.0;
  double r_qual = 0.0;
  double p_qual = 0.0;
  double f1_qual = 0.0;
  double gr = 0.0;
  double gp = 0.0;
  double gf1 = 0.0;
};

/// Quantity, quality and global component metrics of one match.
inline ComponentMetrics component_metrics(const MatchResult& match)
{
  ComponentMetrics c;
  c.m = match.m;
  c.tp = match.tp;
  c.fp = match.fp;
  c.n_detections = match.n_detections;
  double sum_cov = 0.0;
  double sum_acc = 0.0;
  for (const auto& g : match.per_gt) {
    if (!g.matched) continue;
    sum_cov += g.cov;
    sum_acc += g.acc;
  }
  const double tp = match.tp;
  c.r_quant = safe_ratio(tp, match.m);
  c.p_quant = safe_ratio(tp, tp + match.fp);
  c.r_qual = safe_ratio(sum_cov, tp);
  c.p_qual = safe_ratio(sum_acc, tp);
  c.f1_qual = harmonic_mean(c.r_qual, c.p_qual);
  c.gr = safe_ratio(sum_cov, match.m);
  c.gp = safe_ratio(sum_acc, tp + match.fp);
  c.gf1 = harmonic_mean(c.gr, c.gp);
  return c;
}

struct ClassSection
{
  PixelMetrics pixel;
  ComponentMetrics component;
};

struct ComponentRecord
{
  int gt_label = 0;
  TextClass text_class = TextClass::Easy;
  bool matched = false;
  double cov = 0.0;
  double acc = 0.0;
  double f1_qual = 0.0;
};

/// Metrics of one (ground truth, prediction) pair under one mode.
struct MetricsReport
{
  std::string image_id;
  Mode mode = Mode::Normal;
  int relax_iterations = 1;
  /// Set when the ground truth holds no text, so every component ratio is a
  /// 0/0 case.
  bool degenerate = false;
  PixelMetrics pixel;
  ComponentMetrics component;
  /// Index 0 = easy, 1 = hard.
  std::array<ClassSection, 2> per_class{};
  std::vector<ComponentRecord> per_component;

  const ClassSection& easy() const { return per_class[0]; }
  const ClassSection& hard() const { return per_class[1]; }
};

inline std::size_t class_slot(TextClass c) { return c == TextClass::Hard ? 1 : 0; }

namespace detail
{

// Majority class over the component's pixels; a tie goes to the class of
// the component's first pixel.
inline std::vector<TextClass> component_classes(const ClassMask& gt, const LabelMap& labels)
{
  const auto n = static_cast<std::size_t>(labels.n_components());
  std::vector<std::int64_t> easy(n, 0), hard(n, 0);
  std::vector<TextClass> first(n, TextClass::NonText);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] <= 0) continue;
    const auto k = static_cast<std::size_t>(labels[i] - 1);
    if (first[k] == TextClass::NonText) first[k] = gt[i];
    (gt[i] == TextClass::Hard ? hard[k] : easy[k]) += 1;
  }
  std::vector<TextClass> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = easy[k] > hard[k] ? TextClass::Easy : hard[k] > easy[k] ? TextClass::Hard : first[k];
  }
  return out;
}

inline BinaryMask union_of(const ComponentViews& v, const std::vector<TextClass>* classes = nullptr,
                           TextClass only = TextClass::NonText)
{
  BinaryMask out(v.width(), v.height());
  for (int k = 0; k < v.size(); ++k) {
    if (classes && (*classes)[static_cast<std::size_t>(k)] != only) continue;
    for (const auto p : v.pixels[static_cast<std::size_t>(k)]) out[static_cast<std::size_t>(p)] = 1;
  }
  return out;
}

// TP counts prediction pixels inside `positive_area`, FN counts pixels of
// `required_area` the prediction misses.
inline PixelCounts relaxed_counts(const BinaryMask& positive_area, const BinaryMask& required_area,
                                  const BinaryMask& pred, bool count_fp)
{
  PixelCounts c;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i]) {
      if (positive_area[i]) ++c.tp_px;
      else if (count_fp) ++c.fp_px;
    }
    if (required_area[i] && !pred[i]) ++c.fn_px;
  }
  return c;
}

} // namespace detail

/// Shared per-image state for evaluating one pair under several modes: the
/// labelled ground truth, its per-component views and the watershed
/// assignment are computed once.
class PairEvaluator
{
public:
  PairEvaluator(const ClassMask& gt, const BinaryMask& pred, RelaxConfig relax)
    : pred_(pred),
      labels_(connected_components(gt.to_binary())),
      relax_(relax)
  {
    detail::require_same_size(gt, pred, "evaluate");
    if (relax.iterations < 1) throw InputError("relax iterations must be >= 1");
    classes_ = detail::component_classes(gt, labels_);
    original_ = views_from_labels(labels_);
    eroded_ = eroded_views(labels_, relax.iterations);
    dilated_ = dilated_views(labels_, relax.iterations);
    assignment_ = watershed_assign(labels_, pred_);
  }

  const LabelMap& gt_labels() const { return labels_; }
  const LabelMap& assignment() const { return assignment_; }

  MatchResult match_for(Mode mode) const
  {
    // The eroded core decides whether a component was found, in both modes.
    const ComponentViews& cov = mode == Mode::Normal ? original_ : eroded_;
    const ComponentViews& acc = mode == Mode::Normal ? original_ : dilated_;
    return match_assigned(labels_, cov, acc, pred_, eroded_, assignment_);
  }

  MetricsReport evaluate(Mode mode, std::string image_id = {}) const
  {
    MetricsReport r;
    r.image_id = std::move(image_id);
    r.mode = mode;
    r.relax_iterations = relax_.iterations;
    r.degenerate = labels_.n_components() == 0;

    const MatchResult match = match_for(mode);
    r.component = component_metrics(match);

    const ComponentViews& positive = mode == Mode::Normal ? original_ : dilated_;
    const ComponentViews& required = mode == Mode::Normal ? original_ : eroded_;
    r.pixel = pixel_metrics_from_counts(
      detail::relaxed_counts(detail::union_of(positive), detail::union_of(required), pred_, true));

    for (const TextClass cls : {TextClass::Easy, TextClass::Hard}) {
      ClassSection& section = r.per_class[class_slot(cls)];
      // False positives belong to no component and hence to no class.
      MatchResult sub;
      for (const auto& g : match.per_gt) {
        if (classes_[static_cast<std::size_t>(g.gt_label - 1)] != cls) continue;
        sub.per_gt.push_back(g);
        sub.m += 1;
        sub.tp += g.matched ? 1 : 0;
      }
      section.component = component_metrics(sub);
      section.pixel = pixel_metrics_from_counts(
        detail::relaxed_counts(detail::union_of(positive, &classes_, cls),
                               detail::union_of(required, &classes_, cls), pred_, false));
    }

    for (const auto& g : match.per_gt) {
      ComponentRecord rec;
      rec.gt_label = g.gt_label;
      rec.text_class = classes_[static_cast<std::size_t>(g.gt_label - 1)];
      rec.matched = g.matched;
      rec.cov = g.cov;
      rec.acc = g.acc;
      rec.f1_qual = harmonic_mean(g.cov, g.acc);
      r.per_component.push_back(rec);
    }
    return r;
  }

private:
  BinaryMask pred_;
  LabelMap labels_;
  RelaxConfig relax_;
  std::vector<TextClass> classes_;
  ComponentViews original_;
  ComponentViews eroded_;
  ComponentViews dilated_;
  LabelMap assignment_{1, 1};
};

/// Evaluates a prediction against three-class ground truth in one mode.
inline MetricsReport evaluate(const ClassMask& gt, const BinaryMask& pred, Mode mode,
                              RelaxConfig relax = {}, std::string image_id = {})
{
  return PairEvaluator(gt, pred, relax).evaluate(mode, std::move(image_id));
}

} // namespace mangaseg

#endif
