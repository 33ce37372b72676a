#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "mangaseg/app/eval.hpp"
#include "mangaseg/app/histogram_cmd.hpp"
#include "mangaseg/app/loss_cmd.hpp"
#include "mangaseg/app/postprocess_cmd.hpp"
#include "mangaseg/app/synth_cmd.hpp"
#include "mangaseg/app/wrap_cmd.hpp"
#include "support/fixtures.hpp"
#include "support/ttf_builder.hpp"

using namespace mangaseg;
namespace fs = std::filesystem;

namespace
{

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir
{
public:
  TempDir()
  {
    static int counter = 0;
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("mangaseg_" + std::string(info->name()) + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& s) const { return path_ / s; }

private:
  fs::path path_;
};

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RgbImage artwork(int w, int h, int shade)
{
  RgbImage img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img(x, y) = Rgb{static_cast<std::uint8_t>((x * 5 + shade) % 256), static_cast<std::uint8_t>((y * 3) % 256), 180};
    }
  return img;
}

void write_font(const fs::path& dir)
{
  fs::create_directories(dir);
  const auto bytes = ttf::build(ttf::standard_spec());
  io::write_file_atomic(dir / "std.ttf", bytes.data(), bytes.size());
}

} // namespace

TEST(MaskCodec, BinaryRoundTrip)
{
  TempDir d;
  std::mt19937_64 rng(71);
  const BinaryMask m = oracle::random_mask(rng, 33, 17, 0.4);
  io::save_binary_mask(d / "m.png", m);
  EXPECT_FALSE(io::png_is_color(d / "m.png"));
  EXPECT_EQ(io::load_binary_mask(d / "m.png"), m);
}

TEST(MaskCodec, ClassRoundTripAndProjection)
{
  TempDir d;
  std::mt19937_64 rng(72);
  const ClassMask c = fixture::random_gt(rng, 40, 30, 6);
  io::save_class_mask(d / "c.png", c);
  EXPECT_TRUE(io::png_is_color(d / "c.png"));
  EXPECT_EQ(io::load_class_mask(d / "c.png"), c);
  EXPECT_EQ(io::load_binary_mask(d / "c.png"), c.to_binary());
}

TEST(MaskCodec, GrayGroundTruthIsEasyText)
{
  GrayImage g(3, 1);
  g[0] = 0;
  g[1] = 127;
  g[2] = 128;
  const BinaryMask b = io::decode_binary(g);
  EXPECT_EQ(b[0], 0);
  EXPECT_EQ(b[1], 0);
  EXPECT_EQ(b[2], 1);
  TempDir d;
  io::write_gray(d / "g.png", g);
  const ClassMask c = io::load_class_mask(d / "g.png");
  EXPECT_EQ(c[2], TextClass::Easy);
  EXPECT_EQ(c[0], TextClass::NonText);
}

TEST(MaskCodec, UnknownColourIsRejectedUnlessFuzzy)
{
  RgbImage img(2, 1);
  img[0] = io::kHardColor;
  img[1] = Rgb{250, 4, 250};
  EXPECT_THROW(io::decode_class(img), InputError);
  const ClassMask c = io::decode_class(img, 8);
  EXPECT_EQ(c[1], TextClass::Hard);
  img[1] = Rgb{128, 128, 128};
  EXPECT_THROW(io::decode_class(img, 8), InputError);
}

TEST(Png, RgbRoundTripAndGrayConversion)
{
  TempDir d;
  const RgbImage img = artwork(20, 10, 3);
  io::write_rgb(d / "a.png", img);
  EXPECT_EQ(io::read_rgb(d / "a.png"), img);
  const GrayImage g = io::to_gray(img);
  EXPECT_EQ(g.width(), 20);
  RgbImage grey(1, 1);
  grey[0] = Rgb{77, 77, 77};
  EXPECT_EQ(io::to_gray(grey)[0], 77);
  EXPECT_THROW(io::read_rgb(d / "missing.png"), InputError);
}

TEST(ReportJson, RoundTrip)
{
  const auto f = fixture::watershed_scene();
  const PairEvaluator ev(f.gt, f.pred, {});
  const std::vector<MetricsReport> reports = {ev.evaluate(Mode::Normal, "fig"), ev.evaluate(Mode::Relaxed, "fig")};
  const nlohmann::json j = nlohmann::json::parse(io::image_report_json("fig", reports).dump());
  const auto back = io::reports_from_image_json(j);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(back[k].mode, reports[k].mode);
    EXPECT_EQ(back[k].component.tp, reports[k].component.tp);
    EXPECT_DOUBLE_EQ(back[k].component.gf1, reports[k].component.gf1);
    EXPECT_DOUBLE_EQ(back[k].pixel.pf1, reports[k].pixel.pf1);
    ASSERT_EQ(back[k].per_component.size(), reports[k].per_component.size());
    for (std::size_t c = 0; c < back[k].per_component.size(); ++c) {
      EXPECT_EQ(back[k].per_component[c].text_class, reports[k].per_component[c].text_class);
      EXPECT_DOUBLE_EQ(back[k].per_component[c].f1_qual, reports[k].per_component[c].f1_qual);
    }
  }
  EXPECT_TRUE(io::reports_from_image_json({{"kind", "summary"}}).empty());
  nlohmann::json bad = j;
  bad["schema_version"] = 99;
  EXPECT_THROW(io::reports_from_image_json(bad), InputError);
}

TEST(ReportJson, HistogramCsvRowsSumToComponents)
{
  const auto f = fixture::watershed_scene();
  const PairEvaluator ev(f.gt, f.pred, {});
  const auto h = f1_histogram({ev.evaluate(Mode::Normal), ev.evaluate(Mode::Relaxed)}, 4);
  const std::string csv = io::histogram_csv(h, {Mode::Normal, Mode::Relaxed});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "class,mode,bin_lo,bin_hi,count");
  int rows = 0;
  std::int64_t total = 0;
  while (std::getline(in, line)) {
    ++rows;
    total += std::stoll(line.substr(line.rfind(',') + 1));
  }
  EXPECT_EQ(rows, 2 * 2 * 4);
  EXPECT_EQ(total, 10);
  EXPECT_NE(csv.find("easy,normal,0.25,0.5,"), std::string::npos);
  EXPECT_NE(io::histogram_svg(h, {Mode::Normal}).find("<svg"), std::string::npos);
}

TEST(Cli, EvalOfGroundTruthAgainstItselfIsPerfect)
{
  TempDir d;
  std::mt19937_64 rng(73);
  for (int k = 0; k < 4; ++k) {
    const ClassMask gt = fixture::random_gt(rng, 48, 40, 5);
    io::save_class_mask(d / ("gt/p" + std::to_string(k) + ".png"), gt);
    io::save_binary_mask(d / ("pred/p" + std::to_string(k) + ".png"), gt.to_binary());
  }
  app::EvalOptions opt;
  opt.gt_dir = d / "gt";
  opt.pred_dir = d / "pred";
  opt.out_dir = d / "out";
  opt.jobs = 2;
  const auto res = app::run_eval(opt);
  EXPECT_EQ(res.exit_code(), 0);
  ASSERT_EQ(res.reports.size(), 8u);
  for (Mode m : {Mode::Normal, Mode::Relaxed}) {
    for (const auto& [name, s] : res.summaries.at(m).metrics) EXPECT_DOUBLE_EQ(s.mean, 1.0) << name;
  }
  const auto summary = app::read_json_file(d / "out/summary.json");
  EXPECT_EQ(summary.at("kind"), "summary");
  EXPECT_EQ(summary.at("n_images"), 4);
  EXPECT_TRUE(fs::exists(d / "out/p3.json"));
}

TEST(Cli, EvalFoldsAndStrictPairing)
{
  TempDir d;
  const auto f = fixture::watershed_scene();
  io::save_class_mask(d / "gt/a.png", f.gt);
  io::save_class_mask(d / "gt/b.png", f.gt);
  io::save_binary_mask(d / "pred/a.png", f.pred);
  io::save_binary_mask(d / "pred/b.png", f.gt.to_binary());
  io::save_binary_mask(d / "pred/c.png", f.pred);
  io::write_file_atomic(d / "folds.json", std::string(R"({"f1": ["a"], "f2": ["b"]})"));
  app::EvalOptions opt;
  opt.gt_dir = d / "gt";
  opt.pred_dir = d / "pred";
  opt.out_dir = d / "out";
  opt.mode = "normal";
  opt.folds = d / "folds.json";
  auto res = app::run_eval(opt);
  EXPECT_EQ(res.exit_code(), 0);
  EXPECT_EQ(res.warnings.size(), 1u);
  const auto& s = res.summaries.at(Mode::Normal);
  EXPECT_EQ(s.fold_means.size(), 2u);
  EXPECT_DOUBLE_EQ(s.fold_means.at("f2").at("gf1"), 1.0);
  EXPECT_GT(s.metrics.at("gf1").stddev, 0.0);
  EXPECT_EQ(res.summaries.count(Mode::Relaxed), 0u);

  opt.strict = true;
  EXPECT_EQ(app::run_eval(opt).exit_code(), 1);
  opt.mode = "fuzzy";
  EXPECT_THROW(app::run_eval(opt), UsageError);
}

TEST(Cli, DenoiseIsIdempotentOnDisk)
{
  TempDir d;
  std::mt19937_64 rng(74);
  for (int k = 0; k < 3; ++k) io::save_binary_mask(d / ("in/m" + std::to_string(k) + ".png"), oracle::random_mask(rng, 64, 48, 0.05));
  app::DenoiseOptions opt;
  opt.inputs = {d / "in"};
  opt.out_dir = d / "once";
  ASSERT_EQ(app::run_denoise(opt).exit_code(), 0);
  opt.inputs = {d / "once"};
  opt.out_dir = d / "twice";
  opt.jobs = 3;
  ASSERT_EQ(app::run_denoise(opt).exit_code(), 0);
  for (int k = 0; k < 3; ++k) {
    const std::string name = "m" + std::to_string(k) + ".png";
    EXPECT_EQ(slurp(d / ("once/" + name)), slurp(d / ("twice/" + name)));
  }
}

TEST(Cli, ExpandUnionContainsInput)
{
  TempDir d;
  GrayImage page(60, 40, 255);
  for (int y = 10; y < 25; ++y)
    for (int x = 20; x < 24; ++x) page(x, y) = 0;
  RgbImage rgb(60, 40);
  for (std::size_t i = 0; i < page.size(); ++i) rgb[i] = Rgb{page[i], page[i], page[i]};
  io::write_rgb(d / "img/p.png", rgb);
  BinaryMask mask(60, 40);
  oracle::fill_rect(mask, 20, 10, 4, 3);
  mask.set(50, 35, true);
  io::save_binary_mask(d / "mask/p.png", mask);
  app::ExpandOptions opt;
  opt.image = d / "img";
  opt.mask = d / "mask";
  opt.out_dir = d / "out";
  opt.union_with_input = true;
  ASSERT_EQ(app::run_expand(opt).exit_code(), 0);
  const BinaryMask out = io::load_binary_mask(d / "out/p.png");
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) {
      EXPECT_TRUE(out[i]);
    }
  }
  EXPECT_EQ(out.count(), 61u);
}

TEST(Cli, SynthIsDeterministicAcrossRunsAndThreads)
{
  TempDir d;
  write_font(d / "fonts");
  for (int k = 0; k < 3; ++k) io::write_rgb(d / ("imgs/a" + std::to_string(k) + ".png"), artwork(96, 80, 40 * k));
  app::SynthOptions opt;
  opt.images_dir = d / "imgs";
  opt.fonts_dir = d / "fonts";
  opt.count = 6;
  opt.seed = 1234;
  opt.out_dir = d / "run1";
  ASSERT_EQ(app::run_synth(opt).exit_code(), 0);
  opt.out_dir = d / "run2";
  ASSERT_EQ(app::run_synth(opt).exit_code(), 0);
  opt.out_dir = d / "run3";
  opt.jobs = 4;
  ASSERT_EQ(app::run_synth(opt).exit_code(), 0);
  const auto files = app::list_files(d / "run1", {".png", ".json"});
  EXPECT_EQ(files.size(), 18u);
  for (const auto& f : files) {
    const std::string a = slurp(f);
    EXPECT_EQ(a, slurp(d / "run2" / f.filename())) << f;
    EXPECT_EQ(a, slurp(d / "run3" / f.filename())) << f;
  }
  const auto manifest = app::read_json_file(d / "run1/a1_1235.manifest.json");
  EXPECT_EQ(manifest.at("seed"), 1235);
  EXPECT_EQ(manifest.at("kind"), "synth_manifest");
}

TEST(Cli, SynthEdgeCases)
{
  TempDir d;
  app::SynthOptions opt;
  opt.images_dir = d / "none";
  opt.fonts_dir = d / "none";
  opt.out_dir = d / "out";
  EXPECT_EQ(app::run_synth(opt).exit_code(), 0);
  EXPECT_TRUE(fs::is_directory(d / "out"));
  io::write_rgb(d / "imgs/a.png", artwork(32, 32, 0));
  fs::create_directories(d / "fonts");
  io::write_file_atomic(d / "fonts/broken.ttf", std::string("not a font"));
  opt.images_dir = d / "imgs";
  opt.fonts_dir = d / "fonts";
  opt.count = 1;
  EXPECT_THROW(app::run_synth(opt), ConfigError);
}

TEST(Cli, HistogramFromEvalReports)
{
  TempDir d;
  const auto f = fixture::watershed_scene();
  io::save_class_mask(d / "gt/a.png", f.gt);
  io::save_binary_mask(d / "pred/a.png", f.pred);
  app::EvalOptions eval;
  eval.gt_dir = d / "gt";
  eval.pred_dir = d / "pred";
  eval.out_dir = d / "out";
  ASSERT_EQ(app::run_eval(eval).exit_code(), 0);
  app::HistogramOptions opt;
  opt.reports_glob = (d / "out/*.json").string();
  opt.out_csv = d / "h.csv";
  opt.out_svg = d / "h.svg";
  const auto res = app::run_histogram(opt);
  EXPECT_EQ(res.exit_code(), 0);
  std::istringstream in(slurp(d / "h.csv"));
  std::string line;
  std::getline(in, line);
  std::int64_t total = 0;
  while (std::getline(in, line)) total += std::stoll(line.substr(line.rfind(',') + 1));
  EXPECT_EQ(total, 10);
  EXPECT_TRUE(fs::exists(d / "h.svg"));
  opt.reports_glob = (d / "nothing/*.json").string();
  EXPECT_THROW(app::run_histogram(opt), UsageError);
}

TEST(Cli, LossOfPerfectPrediction)
{
  TempDir d;
  BinaryMask gt(16, 16);
  oracle::fill_rect(gt, 4, 4, 6, 6);
  io::save_binary_mask(d / "gt.png", gt);
  io::save_binary_mask(d / "prob.png", gt);
  app::LossOptions opt;
  opt.prob = d / "prob.png";
  opt.gt = d / "gt.png";
  const auto j = app::run_loss(opt);
  EXPECT_LT(std::abs(j.at("mix").get<double>()), 1e-5);
  EXPECT_NEAR(j.at("dice").get<double>(), 1.0, 1e-9);
}

TEST(Cli, WrapReportsLinesAndCalls)
{
  TempDir d;
  write_font(d.path());
  app::WrapOptions opt;
  opt.font = d / "std.ttf";
  opt.size = 20;
  opt.max_width = 60;
  opt.max_height = 1000;
  opt.text = "abcdefghijklmnopqrstuvwxyz";
  const auto fast = app::run_wrap(opt);
  opt.exact = true;
  const auto exact = app::run_wrap(opt);
  EXPECT_EQ(fast.at("lines"), exact.at("lines"));
  EXPECT_GT(fast.at("lines").size(), 1u);
  EXPECT_LT(fast.at("measure_calls").get<int>(), exact.at("measure_calls").get<int>());
}

TEST(Cli, BinaryExitCodes)
{
  const std::string cli = MANGASEG_CLI_PATH;
  auto status = [](const std::string& cmd) {
    const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  EXPECT_EQ(status(cli + " --help"), 0);
  EXPECT_EQ(status(cli + " eval --bogus"), 2);
  EXPECT_EQ(status(cli + " histogram '/nonexistent/*.json' --out /tmp/x.csv"), 2);
  TempDir d;
  fs::create_directories(d / "imgs");
  io::write_rgb(d / "imgs/a.png", artwork(32, 32, 0));
  fs::create_directories(d / "fonts");
  EXPECT_EQ(status(cli + " synth " + (d / "imgs").string() + " " + (d / "fonts").string() + " " +
                   (d / "o").string() + " --count 1 --seed 1"),
            3);
}
