#ifndef MANGASEG_APP_HISTOGRAM_CMD_HPP_
#define MANGASEG_APP_HISTOGRAM_CMD_HPP_

#include <glob.h>

#include <optional>

#include "mangaseg/app/eval.hpp"

namespace mangaseg::app
{

/// Sorted matches of a shell glob pattern.
inline std::vector<fs::path> glob_paths(const std::string& pattern)
{
  glob_t g{};
  const int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
  std::vector<fs::path> out;
  if (rc == 0) {
    for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
  }
  globfree(&g);
  if (rc != 0 && rc != GLOB_NOMATCH) throw InputError("glob failed for '" + pattern + "'");
  std::sort(out.begin(), out.end());
  return out;
}

struct HistogramOptions
{
  std::string reports_glob;
  int bins = 10;
  fs::path out_csv;
  std::optional<fs::path> out_svg;
};

/// Reads every per-image report matched by the glob (other JSON files, such
/// as summaries, are skipped) and writes the F1_qual histogram.
inline CommandResult run_histogram(const HistogramOptions& opt)
{
  if (opt.bins < 1) throw UsageError("--bins must be >= 1");
  const auto files = glob_paths(opt.reports_glob);
  if (files.empty()) throw UsageError("no file matches '" + opt.reports_glob + "'");
  CommandResult out;
  std::vector<MetricsReport> reports;
  for (const auto& f : files) {
    try {
      auto rs = io::reports_from_image_json(read_json_file(f));
      if (rs.empty()) out.warnings.push_back("not an image report, skipped: " + f.string());
      for (auto& r : rs) reports.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.errors.push_back(f.string() + ": " + e.what());
    }
  }
  if (reports.empty()) throw UsageError("no reports found in '" + opt.reports_glob + "'");
  const F1Histogram h = f1_histogram(reports, opt.bins);
  const std::vector<Mode> modes{Mode::Normal, Mode::Relaxed};
  io::write_file_atomic(opt.out_csv, io::histogram_csv(h, modes));
  if (opt.out_svg) io::write_file_atomic(*opt.out_svg, io::histogram_svg(h, modes));
  return out;
}

} // namespace mangaseg::app

#endif
