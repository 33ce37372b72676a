#include <gtest/gtest.h>

#include <random>

#include "mangaseg/metrics.hpp"
#include "support/fixtures.hpp"

using namespace mangaseg;

namespace
{

void expect_unit(double v)
{
  EXPECT_GE(v, 0.0);
  EXPECT_LE(v, 1.0);
}

} // namespace

TEST(Ratios, ZeroOverZeroIsZero)
{
  EXPECT_EQ(safe_ratio(0.0, 0.0), 0.0);
  EXPECT_EQ(harmonic_mean(0.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(harmonic_mean(1.0, 0.5), 2.0 / 3.0);
}

TEST(PixelMetrics, CountsAndRatios)
{
  BinaryMask gt(4, 1), pred(4, 1);
  gt[0] = gt[1] = gt[2] = 1;
  pred[1] = pred[2] = pred[3] = 1;
  const PixelMetrics p = pixel_metrics(gt, pred);
  EXPECT_EQ(p.counts.tp_px, 2);
  EXPECT_EQ(p.counts.fp_px, 1);
  EXPECT_EQ(p.counts.fn_px, 1);
  EXPECT_DOUBLE_EQ(p.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(p.pf1, 2.0 / 3.0);
}

TEST(ComponentMetrics, GlobalIsQuantityTimesQuality)
{
  std::mt19937_64 rng(31);
  for (int t = 0; t < 2000; ++t) {
    const ComponentMetrics c = component_metrics(fixture::random_match(rng));
    ASSERT_NEAR(c.gr, c.r_quant * c.r_qual, 1e-12);
    ASSERT_NEAR(c.gp, c.p_quant * c.p_qual, 1e-12);
    for (double v : {c.r_quant, c.p_quant, c.r_qual, c.p_qual, c.f1_qual, c.gr, c.gp, c.gf1}) expect_unit(v);
  }
}

TEST(ComponentMetrics, HandCountedExample)
{
  MatchResult r;
  r.m = 4;
  r.tp = 2;
  r.fp = 2;
  r.per_gt = {{1, true, 0, 0, 0, 0, 0.5, 1.0}, {2, true, 0, 0, 0, 0, 1.0, 0.5}, {3}, {4}};
  const ComponentMetrics c = component_metrics(r);
  EXPECT_DOUBLE_EQ(c.r_quant, 0.5);
  EXPECT_DOUBLE_EQ(c.p_quant, 0.5);
  EXPECT_DOUBLE_EQ(c.r_qual, 0.75);
  EXPECT_DOUBLE_EQ(c.p_qual, 0.75);
  EXPECT_DOUBLE_EQ(c.gr, 1.5 / 4.0);
  EXPECT_DOUBLE_EQ(c.gp, 1.5 / 4.0);
}

TEST(Evaluate, PerfectPredictionScoresOneInBothModes)
{
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    const ClassMask gt = fixture::random_gt(rng, 40, 30, 5);
    const PairEvaluator ev(gt, gt.to_binary(), {});
    for (Mode m : {Mode::Normal, Mode::Relaxed}) {
      const MetricsReport r = ev.evaluate(m);
      EXPECT_DOUBLE_EQ(r.pixel.pf1, 1.0);
      EXPECT_DOUBLE_EQ(r.component.gf1, 1.0);
      EXPECT_DOUBLE_EQ(r.component.f1_qual, 1.0);
      EXPECT_FALSE(r.degenerate);
    }
  }
}

TEST(Evaluate, WatershedScene)
{
  const auto f = fixture::watershed_scene();
  const MetricsReport r = evaluate(f.gt, f.pred, Mode::Normal, {}, "fig");
  EXPECT_EQ(r.image_id, "fig");
  EXPECT_EQ(r.component.tp, 5);
  EXPECT_EQ(r.component.fp, 1);
  EXPECT_DOUBLE_EQ(r.component.p_quant, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(r.component.r_quant, 1.0);
  ASSERT_EQ(r.per_component.size(), 5u);
  EXPECT_EQ(r.per_component[3].text_class, TextClass::Hard);
}

TEST(Evaluate, PerClassSectionsSplitComponents)
{
  const auto f = fixture::watershed_scene();
  const MetricsReport r = evaluate(f.gt, f.pred, Mode::Normal);
  EXPECT_EQ(r.easy().component.m, 3);
  EXPECT_EQ(r.hard().component.m, 2);
  EXPECT_EQ(r.easy().component.tp, 3);
  EXPECT_EQ(r.hard().component.fp, 0);
  EXPECT_EQ(r.easy().pixel.counts.fp_px, 0);
  EXPECT_DOUBLE_EQ(r.hard().component.p_quant, 1.0);
}

TEST(Evaluate, MajorityClassDecidesMixedComponent)
{
  ClassMask gt(6, 2);
  fixture::fill_class(gt, 0, 0, 2, 2, TextClass::Easy);
  fixture::fill_class(gt, 2, 0, 4, 2, TextClass::Hard);
  const MetricsReport r = evaluate(gt, gt.to_binary(), Mode::Normal);
  ASSERT_EQ(r.per_component.size(), 1u);
  EXPECT_EQ(r.per_component[0].text_class, TextClass::Hard);
  EXPECT_EQ(r.easy().component.m, 0);
}

TEST(Evaluate, EmptyGroundTruthIsDegenerate)
{
  BinaryMask pred(8, 8);
  pred.set(3, 3, true);
  const MetricsReport r = evaluate(ClassMask(8, 8), pred, Mode::Relaxed);
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.component.fp, 1);
  EXPECT_EQ(r.component.gf1, 0.0);
  EXPECT_EQ(r.pixel.precision, 0.0);
}

TEST(Evaluate, EmptyPredictionScoresZero)
{
  ClassMask gt(8, 8);
  fixture::fill_class(gt, 1, 1, 4, 4, TextClass::Easy);
  const MetricsReport r = evaluate(gt, BinaryMask(8, 8), Mode::Normal);
  EXPECT_EQ(r.component.tp, 0);
  EXPECT_EQ(r.component.gf1, 0.0);
  EXPECT_EQ(r.pixel.counts.fn_px, 16);
}

TEST(Relaxed, PredictionInsideDilationHasFullAccuracy)
{
  ClassMask gt(20, 20);
  fixture::fill_class(gt, 5, 5, 8, 6, TextClass::Easy);
  const BinaryMask pred = dilate(gt.to_binary());
  const MetricsReport normal = evaluate(gt, pred, Mode::Normal);
  const MetricsReport relaxed = evaluate(gt, pred, Mode::Relaxed);
  EXPECT_LT(normal.per_component[0].acc, 1.0);
  EXPECT_EQ(relaxed.per_component[0].acc, 1.0);
  EXPECT_EQ(relaxed.per_component[0].cov, 1.0);
  EXPECT_EQ(relaxed.pixel.precision, 1.0);
}

TEST(Relaxed, ErodedPredictionHasFullCoverage)
{
  ClassMask gt(20, 20);
  fixture::fill_class(gt, 5, 5, 8, 6, TextClass::Hard);
  const BinaryMask pred = erode(gt.to_binary());
  const MetricsReport relaxed = evaluate(gt, pred, Mode::Relaxed);
  EXPECT_EQ(relaxed.per_component[0].cov, 1.0);
  EXPECT_EQ(relaxed.pixel.recall, 1.0);
  EXPECT_LT(evaluate(gt, pred, Mode::Normal).per_component[0].cov, 1.0);
}

TEST(Relaxed, DominatesNormalOnBoundaryErrors)
{
  std::mt19937_64 rng(33);
  for (int t = 0; t < 200; ++t) {
    const auto f = fixture::boundary_error_pair(rng);
    const PairEvaluator ev(f.gt, f.pred, {});
    const MetricsReport n = ev.evaluate(Mode::Normal);
    const MetricsReport r = ev.evaluate(Mode::Relaxed);
    ASSERT_EQ(n.per_component.size(), r.per_component.size());
    for (std::size_t k = 0; k < n.per_component.size(); ++k) {
      ASSERT_GE(r.per_component[k].acc, n.per_component[k].acc) << t;
      ASSERT_GE(r.per_component[k].cov, n.per_component[k].cov) << t;
    }
  }
}

TEST(Relaxed, AccuracyDominatesEvenOnArbitraryPredictions)
{
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const ClassMask gt = fixture::random_gt(rng, 32, 32, 4);
    const BinaryMask pred = oracle::random_mask(rng, 32, 32, 0.4);
    const PairEvaluator ev(gt, pred, {});
    const auto n = ev.evaluate(Mode::Normal);
    const auto r = ev.evaluate(Mode::Relaxed);
    for (std::size_t k = 0; k < n.per_component.size(); ++k) {
      ASSERT_EQ(n.per_component[k].matched, r.per_component[k].matched);
      ASSERT_GE(r.per_component[k].acc, n.per_component[k].acc);
    }
  }
}

TEST(Relaxed, CoverageCanDropWhenOnlyTheRingIsPredicted)
{
  const auto f = fixture::ring_counterexample();
  const PairEvaluator ev(f.gt, f.pred, {});
  EXPECT_DOUBLE_EQ(ev.evaluate(Mode::Normal).per_component[0].cov, 17.0 / 25.0);
  EXPECT_DOUBLE_EQ(ev.evaluate(Mode::Relaxed).per_component[0].cov, 1.0 / 9.0);
}

TEST(Relaxed, MoreIterationsForgiveWiderBoundaries)
{
  ClassMask gt(30, 30);
  fixture::fill_class(gt, 8, 8, 12, 12, TextClass::Easy);
  const BinaryMask pred = dilate(gt.to_binary(), 2);
  EXPECT_LT(evaluate(gt, pred, Mode::Relaxed, RelaxConfig{1}).per_component[0].acc, 1.0);
  EXPECT_EQ(evaluate(gt, pred, Mode::Relaxed, RelaxConfig{2}).per_component[0].acc, 1.0);
  EXPECT_THROW(evaluate(gt, pred, Mode::Relaxed, RelaxConfig{0}), InputError);
}
