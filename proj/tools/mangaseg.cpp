#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "mangaseg/app/eval.hpp"
#include "mangaseg/app/histogram_cmd.hpp"
#include "mangaseg/app/loss_cmd.hpp"
#include "mangaseg/app/postprocess_cmd.hpp"
#include "mangaseg/app/synth_cmd.hpp"
#include "mangaseg/app/wrap_cmd.hpp"

namespace
{

using namespace mangaseg;

enum class LogLevel { Error = 0, Warn = 1, Info = 2 };

LogLevel log_level()
{
  const char* env = std::getenv("MANGASEG_LOG");
  const std::string v = env ? env : "warn";
  if (v == "error" || v == "quiet") return LogLevel::Error;
  if (v == "info" || v == "debug") return LogLevel::Info;
  return LogLevel::Warn;
}

int report(const app::CommandResult& r, const std::string& what)
{
  const LogLevel level = log_level();
  if (level >= LogLevel::Warn) {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
  }
  for (const auto& e : r.errors) std::cerr << "error: " << e << '\n';
  if (level >= LogLevel::Info) {
    std::cerr << what << ": " << r.errors.size() << " error(s), " << r.warnings.size() << " warning(s)\n";
  }
  return r.exit_code();
}

void add_jobs(CLI::App* cmd, int& jobs)
{
  cmd->add_option("--jobs,-j", jobs, "Worker threads")->check(CLI::PositiveNumber);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App cli{"Manga text segmentation: evaluation, post-processing and synthetic data"};
  cli.require_subcommand(1);

  app::EvalOptions eval;
  std::string folds_path;
  auto* eval_cmd = cli.add_subcommand("eval", "Score predicted masks against ground truth");
  eval_cmd->add_option("gt_dir", eval.gt_dir, "Ground-truth masks")->required()->check(CLI::ExistingDirectory);
  eval_cmd->add_option("pred_dir", eval.pred_dir, "Predicted masks")->required()->check(CLI::ExistingDirectory);
  eval_cmd->add_option("--out", eval.out_dir, "Report directory")->required();
  eval_cmd->add_option("--mode", eval.mode, "normal, relaxed or both")->capture_default_str();
  eval_cmd->add_option("--relax-iters", eval.relax_iters, "Erosion/dilation iterations")->capture_default_str();
  eval_cmd->add_flag("--strict", eval.strict, "Unpaired files are errors");
  eval_cmd->add_option("--folds", folds_path, "Fold manifest (JSON)")->check(CLI::ExistingFile);
  eval_cmd->add_option("--fuzzy-palette", eval.fuzzy_palette, "Palette colour tolerance")->capture_default_str();
  add_jobs(eval_cmd, eval.jobs);

  app::DenoiseOptions denoise;
  auto* denoise_cmd = cli.add_subcommand("denoise", "Remove isolated small components");
  denoise_cmd->add_option("inputs", denoise.inputs, "Mask files or directories")->required();
  denoise_cmd->add_option("--out", denoise.out_dir, "Output directory")->required();
  denoise_cmd->add_option("--good-area", denoise.params.good_area)->capture_default_str();
  denoise_cmd->add_option("--index-window", denoise.params.index_window)->capture_default_str();
  denoise_cmd->add_option("--y-slack", denoise.params.y_slack)->capture_default_str();
  denoise_cmd->add_option("--x-slack", denoise.params.x_slack)->capture_default_str();
  add_jobs(denoise_cmd, denoise.jobs);

  app::ExpandOptions expand;
  auto* expand_cmd = cli.add_subcommand("expand", "Complete partially detected characters");
  expand_cmd->add_option("--image", expand.image, "Page image file or directory")->required();
  expand_cmd->add_option("--mask", expand.mask, "Mask file or directory")->required();
  expand_cmd->add_option("--out", expand.out_dir, "Output directory")->required();
  expand_cmd->add_flag("--union", expand.union_with_input, "Keep the input mask pixels");
  expand_cmd->add_option("--block-size", expand.params.block_size)->capture_default_str();
  expand_cmd->add_option("--offset", expand.params.offset_c)->capture_default_str();
  expand_cmd->add_option("--max-components", expand.params.max_components)->capture_default_str();
  expand_cmd->add_option("--min-area", expand.params.min_area)->capture_default_str();
  expand_cmd->add_option("--min-overlap", expand.params.min_overlap_frac)->capture_default_str();
  add_jobs(expand_cmd, expand.jobs);

  app::SynthOptions synth;
  auto* synth_cmd = cli.add_subcommand("synth", "Overlay random text on clean artwork");
  synth_cmd->add_option("images_dir", synth.images_dir)->required()->check(CLI::ExistingDirectory);
  synth_cmd->add_option("fonts_dir", synth.fonts_dir)->required()->check(CLI::ExistingDirectory);
  synth_cmd->add_option("out_dir", synth.out_dir)->required();
  synth_cmd->add_option("--count", synth.count, "Pairs to generate")->required();
  synth_cmd->add_option("--seed", synth.seed, "Base seed")->capture_default_str();
  add_jobs(synth_cmd, synth.jobs);

  app::HistogramOptions hist;
  std::string svg_path;
  auto* hist_cmd = cli.add_subcommand("histogram", "F1_qual histogram of per-image reports");
  hist_cmd->add_option("reports_glob", hist.reports_glob, "Glob of report JSON files")->required();
  hist_cmd->add_option("--bins", hist.bins)->capture_default_str();
  hist_cmd->add_option("--out", hist.out_csv, "CSV output")->required();
  hist_cmd->add_option("--svg", svg_path, "SVG output");

  app::LossOptions loss;
  auto* loss_cmd = cli.add_subcommand("loss", "Reference loss values for a probability map");
  loss_cmd->add_option("prob", loss.prob, "8-bit probability PNG")->required()->check(CLI::ExistingFile);
  loss_cmd->add_option("gt", loss.gt, "Ground-truth mask")->required()->check(CLI::ExistingFile);
  loss_cmd->add_option("--alpha", loss.alpha)->capture_default_str();
  loss_cmd->add_option("--gamma", loss.gamma)->capture_default_str();
  loss_cmd->add_option("--fuzzy-palette", loss.fuzzy_palette)->capture_default_str();

  app::WrapOptions wrap;
  auto* wrap_cmd = cli.add_subcommand("wrap", "Wrap text to a box with a font");
  wrap_cmd->add_option("font", wrap.font)->required()->check(CLI::ExistingFile);
  wrap_cmd->add_option("text", wrap.text)->required();
  wrap_cmd->add_option("--size", wrap.size, "Pixel size")->capture_default_str();
  wrap_cmd->add_option("--max-width", wrap.max_width)->required();
  wrap_cmd->add_option("--max-height", wrap.max_height)->required();
  wrap_cmd->add_flag("--exact", wrap.exact, "Character-by-character reference algorithm");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = cli.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*eval_cmd) {
      if (!folds_path.empty()) eval.folds = folds_path;
      return report(app::run_eval(eval), "eval");
    }
    if (*denoise_cmd) return report(app::run_denoise(denoise), "denoise");
    if (*expand_cmd) return report(app::run_expand(expand), "expand");
    if (*synth_cmd) return report(app::run_synth(synth), "synth");
    if (*hist_cmd) {
      if (!svg_path.empty()) hist.out_svg = svg_path;
      return report(app::run_histogram(hist), "histogram");
    }
    if (*loss_cmd) {
      std::cout << app::run_loss(loss).dump(2) << '\n';
      return 0;
    }
    if (*wrap_cmd) {
      std::cout << app::run_wrap(wrap).dump(2) << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
