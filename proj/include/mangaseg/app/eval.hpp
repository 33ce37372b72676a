#ifndef MANGASEG_APP_EVAL_HPP_
#define MANGASEG_APP_EVAL_HPP_

#include <fstream>
#include <optional>

#include "mangaseg/aggregate.hpp"
#include "mangaseg/app/common.hpp"
#include "mangaseg/io/mask_codec.hpp"
#include "mangaseg/io/report_json.hpp"
#include "mangaseg/metrics.hpp"

namespace mangaseg::app
{

inline std::vector<Mode> parse_modes(const std::string& s)
{
  if (s == "normal") return {Mode::Normal};
  if (s == "relaxed") return {Mode::Relaxed};
  if (s == "both") return {Mode::Normal, Mode::Relaxed};
  throw UsageError("--mode must be normal, relaxed or both, got '" + s + "'");
}

struct EvalOptions
{
  fs::path gt_dir;
  fs::path pred_dir;
  fs::path out_dir;
  std::string mode = "both";
  int relax_iters = 1;
  bool strict = false;
  std::optional<fs::path> folds;
  int fuzzy_palette = 0;
  int jobs = 1;
};

struct EvalOutcome : CommandResult
{
  /// Sorted by image id, then mode.
  std::vector<MetricsReport> reports;
  std::map<Mode, AggregateSummary> summaries;
};

inline nlohmann::json read_json_file(const fs::path& path)
{
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

/// Evaluates every prediction against the ground truth with the same stem.
/// Writes `{stem}.json` per pair and `summary.json` to out_dir.
inline EvalOutcome run_eval(const EvalOptions& opt)
{
  const std::vector<Mode> modes = parse_modes(opt.mode);
  if (opt.relax_iters < 1) throw UsageError("--relax-iters must be >= 1");
  if (opt.fuzzy_palette < 0) throw UsageError("--fuzzy-palette must be >= 0");
  FoldMap folds;
  if (opt.folds) folds = io::fold_map_from_json(read_json_file(*opt.folds));

  const auto gt = png_by_stem(opt.gt_dir);
  const auto pred = png_by_stem(opt.pred_dir);
  EvalOutcome out;
  std::vector<std::string> stems;
  for (const auto& [stem, path] : gt) {
    if (pred.count(stem)) stems.push_back(stem);
    else (opt.strict ? out.errors : out.warnings).push_back("unpaired ground truth: " + path.string());
  }
  for (const auto& [stem, path] : pred) {
    if (!gt.count(stem)) (opt.strict ? out.errors : out.warnings).push_back("unpaired prediction: " + path.string());
  }

  fs::create_directories(opt.out_dir);
  std::vector<std::vector<MetricsReport>> per_image(stems.size());
  const auto failures = parallel_for(stems.size(), opt.jobs, [&](std::size_t i) {
    const std::string& stem = stems[i];
    const ClassMask g = io::load_class_mask(gt.at(stem), opt.fuzzy_palette);
    const BinaryMask p = io::load_binary_mask(pred.at(stem), opt.fuzzy_palette);
    const PairEvaluator ev(g, p, RelaxConfig{opt.relax_iters});
    std::vector<MetricsReport> reports;
    for (Mode m : modes) reports.push_back(ev.evaluate(m, stem));
    io::write_file_atomic(opt.out_dir / (stem + ".json"), io::image_report_json(stem, reports).dump(2) + "\n");
    per_image[i] = std::move(reports);
  });
  for (std::size_t i = 0; i < stems.size(); ++i) {
    if (!failures[i].empty()) out.errors.push_back(stems[i] + ": " + failures[i]);
    for (auto& r : per_image[i]) out.reports.push_back(std::move(r));
  }

  nlohmann::json modes_json = nlohmann::json::object();
  for (Mode m : modes) {
    std::vector<MetricsReport> of_mode;
    for (const auto& r : out.reports) {
      if (r.mode == m) of_mode.push_back(r);
    }
    if (of_mode.empty()) continue;
    try {
      out.summaries[m] = aggregate(of_mode, folds);
      modes_json[to_string(m)] = io::to_json(out.summaries.at(m));
    } catch (const std::exception& e) {
      out.errors.push_back(std::string("aggregate ") + to_string(m) + ": " + e.what());
    }
  }
  if (out.reports.empty()) out.errors.push_back("no image pair was evaluated");

  const nlohmann::json summary = {{"schema_version", io::kSchemaVersion},
                                  {"kind", "summary"},
                                  {"relax_iterations", opt.relax_iters},
                                  {"n_images", stems.size()},
                                  {"modes", modes_json},
                                  {"errors", out.errors},
                                  {"warnings", out.warnings}};
  io::write_file_atomic(opt.out_dir / "summary.json", summary.dump(2) + "\n");
  return out;
}

} // namespace mangaseg::app

#endif
