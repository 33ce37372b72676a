#ifndef MANGASEG_AGGREGATE_HPP_
#define MANGASEG_AGGREGATE_HPP_

#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mangaseg/metrics.hpp"

namespace mangaseg
{

/// Fold name -> image ids (file stems) evaluated in that fold.
using FoldMap = std::map<std::string, std::vector<std::string>>;

inline const std::vector<std::string>& summary_metric_names()
{
  static const std::vector<std::string> names = {"precision", "recall",  "pf1",     "r_quant",
                                                 "p_quant",   "r_qual",  "p_qual",  "f1_qual",
                                                 "gr",        "gp",      "gf1"};
  return names;
}

inline double metric_value(const MetricsReport& r, const std::string& name)
{
  const auto& c = r.component;
  if (name == "precision") return r.pixel.precision;
  if (name == "recall") return r.pixel.recall;
  if (name == "pf1") return r.pixel.pf1;
  if (name == "r_quant") return c.r_quant;
  if (name == "p_quant") return c.p_quant;
  if (name == "r_qual") return c.r_qual;
  if (name == "p_qual") return c.p_qual;
  if (name == "f1_qual") return c.f1_qual;
  if (name == "gr") return c.gr;
  if (name == "gp") return c.gp;
  if (name == "gf1") return c.gf1;
  throw InputError("unknown metric: " + name);
}

struct MetricSummary
{
  double mean = 0.0;
  /// Sample (n-1) standard deviation across folds; 0 for a single fold.
  double stddev = 0.0;

  /// Percent with two decimals, deviation with one: "72.63 ± 1.8".
  std::string formatted() const
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f \xC2\xB1 %.1f", mean * 100.0, stddev * 100.0);
    return buf;
  }
};

struct AggregateSummary
{
  Mode mode = Mode::Normal;
  /// Per fold, per metric: mean over the fold's reports.
  std::map<std::string, std::map<std::string, double>> fold_means;
  std::map<std::string, std::size_t> fold_sizes;
  /// Across folds.
  std::map<std::string, MetricSummary> metrics;
  /// Reports whose image id appears in no fold.
  std::vector<std::string> unassigned;
};

inline MetricSummary mean_and_sample_std(const std::vector<double>& values)
{
  MetricSummary s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

/// Averages reports within each fold, then reports mean and sample standard
/// deviation of the fold means. An empty fold map puts every report in one
/// fold named "all". Folds with no reports are ignored.
inline AggregateSummary aggregate(const std::vector<MetricsReport>& reports, const FoldMap& folds = {})
{
  if (reports.empty()) throw UsageError("aggregate: no reports");
  AggregateSummary out;
  out.mode = reports.front().mode;
  for (const auto& r : reports) {
    if (r.mode != out.mode) throw InputError("aggregate: reports mix normal and relaxed mode");
  }

  std::map<std::string, std::vector<const MetricsReport*>> grouped;
  if (folds.empty()) {
    for (const auto& r : reports) grouped["all"].push_back(&r);
  } else {
    std::map<std::string, std::string> fold_of;
    for (const auto& [fold, ids] : folds) {
      for (const auto& id : ids) fold_of.emplace(id, fold);
    }
    for (const auto& r : reports) {
      auto it = fold_of.find(r.image_id);
      if (it == fold_of.end()) out.unassigned.push_back(r.image_id);
      else grouped[it->second].push_back(&r);
    }
  }
  if (grouped.empty()) throw UsageError("aggregate: no report belongs to any fold");

  for (const auto& name : summary_metric_names()) {
    std::vector<double> means;
    for (const auto& [fold, members] : grouped) {
      double sum = 0.0;
      for (const auto* r : members) sum += metric_value(*r, name);
      const double mean = sum / static_cast<double>(members.size());
      out.fold_means[fold][name] = mean;
      out.fold_sizes[fold] = members.size();
      means.push_back(mean);
    }
    out.metrics[name] = mean_and_sample_std(means);
  }
  return out;
}

struct F1Histogram
{
  int bins = 10;
  /// (class, mode) -> counts per bin. All four keys are always present.
  std::map<std::pair<TextClass, Mode>, std::vector<std::int64_t>> counts;

  std::int64_t total() const
  {
    std::int64_t n = 0;
    for (const auto& [key, c] : counts) {
      for (auto v : c) n += v;
    }
    return n;
  }
};

/// Bin of a value in [0, 1] among `bins` equal-width bins; the last bin is
/// closed on the right.
inline int f1_bin(double f1, int bins)
{
  if (f1 <= 0.0) return 0;
  const int b = static_cast<int>(std::floor(f1 * bins));
  return b >= bins ? bins - 1 : b;
}

/// Histogram of per-component F1_qual (unmatched components count as 0),
/// split by text class and mode.
inline F1Histogram f1_histogram(const std::vector<MetricsReport>& reports, int bins = 10)
{
  if (bins < 1) throw UsageError("histogram needs at least one bin");
  F1Histogram h;
  h.bins = bins;
  for (const TextClass c : {TextClass::Easy, TextClass::Hard}) {
    for (const Mode m : {Mode::Normal, Mode::Relaxed}) {
      h.counts[{c, m}] = std::vector<std::int64_t>(static_cast<std::size_t>(bins), 0);
    }
  }
  for (const auto& r : reports) {
    for (const auto& comp : r.per_component) {
      h.counts[{comp.text_class, r.mode}][static_cast<std::size_t>(f1_bin(comp.f1_qual, bins))] += 1;
    }
  }
  return h;
}

} // namespace mangaseg

#endif
