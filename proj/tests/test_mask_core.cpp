#include <gtest/gtest.h>

#include <random>

#include "mangaseg/components.hpp"
#include "mangaseg/morphology.hpp"
#include "support/oracles.hpp"

using namespace mangaseg;

namespace
{

BinaryMask from_bits(int w, int h, unsigned bits)
{
  BinaryMask m(w, h);
  for (int i = 0; i < w * h; ++i) m[static_cast<std::size_t>(i)] = (bits >> i) & 1u;
  return m;
}

bool same_labels(const LabelMap& got, const Grid<int>& want)
{
  for (std::size_t i = 0; i < got.size(); ++i) {
    if (got[i] != want[i]) return false;
  }
  return true;
}

} // namespace

TEST(Grid, RejectsEmptyDimensions)
{
  EXPECT_THROW(BinaryMask(0, 4), InputError);
  EXPECT_THROW(GrayImage(3, -1), InputError);
  EXPECT_THROW(GrayImage(2, 2, std::vector<std::uint8_t>(3)), InputError);
}

TEST(Grid, ProbMapValidatesRange)
{
  EXPECT_THROW(ProbMap(1, 2, std::vector<double>{0.5, 1.5}), InputError);
  EXPECT_NO_THROW(ProbMap(1, 2, std::vector<double>{0.0, 1.0}));
}

TEST(Grid, ClassMaskProjection)
{
  ClassMask c(3, 1);
  c(1, 0) = TextClass::Easy;
  c(2, 0) = TextClass::Hard;
  const BinaryMask b = c.to_binary();
  EXPECT_EQ(b[0], 0);
  EXPECT_EQ(b[1], 1);
  EXPECT_EQ(b[2], 1);
}

TEST(ConnectedComponents, EmptyAndFull)
{
  EXPECT_EQ(connected_components(BinaryMask(5, 4)).n_components(), 0);
  const LabelMap full = connected_components(BinaryMask(5, 4, true));
  EXPECT_EQ(full.n_components(), 1);
  for (auto v : full.data()) EXPECT_EQ(v, 1);
}

TEST(ConnectedComponents, DiagonalTouchJoins)
{
  BinaryMask m(3, 3);
  m.set(0, 0, true);
  m.set(1, 1, true);
  m.set(2, 2, true);
  EXPECT_EQ(connected_components(m).n_components(), 1);
}

TEST(ConnectedComponents, CheckerboardIsOneComponent)
{
  BinaryMask m(6, 6);
  for (int y = 0; y < 6; ++y)
    for (int x = 0; x < 6; ++x) m.set(x, y, (x + y) % 2 == 0);
  EXPECT_EQ(connected_components(m).n_components(), 1);
}

TEST(ConnectedComponents, UShapeMergesLate)
{
  // Two arms that only join on the bottom row.
  BinaryMask m(5, 4);
  oracle::fill_rect(m, 0, 0, 1, 4);
  oracle::fill_rect(m, 4, 0, 1, 4);
  oracle::fill_rect(m, 0, 3, 5, 1);
  const LabelMap l = connected_components(m);
  EXPECT_EQ(l.n_components(), 1);
  EXPECT_EQ(l(4, 0), 1);
}

TEST(ConnectedComponents, LabelsFollowRasterOrderOfFirstPixel)
{
  BinaryMask m(6, 3);
  m.set(4, 0, true);
  m.set(0, 1, true);
  m.set(2, 2, true);
  const LabelMap l = connected_components(m);
  EXPECT_EQ(l(4, 0), 1);
  EXPECT_EQ(l(0, 1), 2);
  EXPECT_EQ(l(2, 2), 3);
}

TEST(ConnectedComponents, ExhaustiveFourByFourMatchesFloodFill)
{
  int mismatches = 0;
  for (unsigned bits = 0; bits < (1u << 16); ++bits) {
    const BinaryMask m = from_bits(4, 4, bits);
    int n = 0;
    const auto want = oracle::flood_fill_labels(m, &n);
    const LabelMap got = connected_components(m);
    if (got.n_components() != n || !same_labels(got, want)) ++mismatches;
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(ConnectedComponents, RandomMasksMatchFloodFill)
{
  std::mt19937_64 rng(7);
  for (int t = 0; t < 300; ++t) {
    const int w = 1 + static_cast<int>(rng() % 40);
    const int h = 1 + static_cast<int>(rng() % 40);
    const BinaryMask m = oracle::random_mask(rng, w, h, 0.2 + 0.5 * (t % 3) / 2.0);
    int n = 0;
    const auto want = oracle::flood_fill_labels(m, &n);
    const LabelMap got = connected_components(m);
    ASSERT_EQ(got.n_components(), n);
    ASSERT_TRUE(same_labels(got, want)) << "case " << t;
  }
}

TEST(ComponentStats, AreaAndBoundingBox)
{
  BinaryMask m(10, 8);
  oracle::fill_rect(m, 2, 1, 3, 4);
  oracle::fill_rect(m, 7, 6, 2, 1);
  const auto stats = component_stats(connected_components(m));
  ASSERT_EQ(stats.size(), 2u);
  EXPECT_EQ(stats[0].area, 12);
  EXPECT_EQ(stats[0].bbox.x, 2);
  EXPECT_EQ(stats[0].bbox.y, 1);
  EXPECT_EQ(stats[0].bbox.w, 3);
  EXPECT_EQ(stats[0].bbox.h, 4);
  EXPECT_EQ(stats[1].area, 2);
  EXPECT_EQ(stats[1].label, 2);
}

TEST(Morphology, ErodeSquareLeavesCore)
{
  BinaryMask m(7, 7);
  oracle::fill_rect(m, 1, 1, 5, 5);
  const BinaryMask e = erode(m);
  EXPECT_EQ(e.count(), 9u);
  EXPECT_TRUE(e.at(2, 2));
  EXPECT_FALSE(e.at(1, 1));
  EXPECT_EQ(erode(m, 2).count(), 1u);
  EXPECT_TRUE(erode(m, 3).empty());
}

TEST(Morphology, BorderCountsAsBackground)
{
  const BinaryMask full(4, 4, true);
  const BinaryMask e = erode(full);
  EXPECT_EQ(e.count(), 4u);
  EXPECT_FALSE(e.at(0, 0));
}

TEST(Morphology, DilatePointIsCross)
{
  BinaryMask m(5, 5);
  m.set(2, 2, true);
  const BinaryMask d = dilate(m);
  EXPECT_EQ(d.count(), 5u);
  EXPECT_FALSE(d.at(1, 1));
  EXPECT_EQ(dilate(m, 2).count(), 13u);
}

TEST(Morphology, MatchesBruteForceOracle)
{
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const BinaryMask m = oracle::random_mask(rng, 1 + static_cast<int>(rng() % 20), 1 + static_cast<int>(rng() % 20), 0.6);
    const int k = 1 + static_cast<int>(rng() % 3);
    BinaryMask e = m, d = m;
    for (int i = 0; i < k; ++i) {
      e = oracle::erode_cross(e);
      d = oracle::dilate_cross(d);
    }
    ASSERT_EQ(erode(m, k), e);
    ASSERT_EQ(dilate(m, k), d);
  }
}

TEST(Morphology, OpeningAndClosingProperties)
{
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    const BinaryMask m = oracle::random_mask(rng, 24, 18, 0.5);
    const BinaryMask open = dilate(erode(m));
    const BinaryMask e = erode(m);
    const BinaryMask d = dilate(m);
    for (std::size_t i = 0; i < m.size(); ++i) {
      ASSERT_LE(e[i], m[i]);
      ASSERT_LE(m[i], d[i]);
      ASSERT_LE(open[i], m[i]);
    }
    // Opening is idempotent.
    ASSERT_EQ(dilate(erode(open)), open);
  }
}

TEST(Morphology, ClosingContainsInteriorPixels)
{
  // Dilation can spill past the canvas edge and be lost, so closing is
  // extensive only away from the border.
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    const BinaryMask m = oracle::random_mask(rng, 24, 18, 0.5);
    const BinaryMask close = erode(dilate(m));
    for (int y = 1; y + 1 < m.height(); ++y)
      for (int x = 1; x + 1 < m.width(); ++x) ASSERT_LE(m(x, y), close(x, y));
  }
}

TEST(Morphology, RejectsNonPositiveIterations)
{
  EXPECT_THROW(erode(BinaryMask(2, 2), 0), InputError);
  EXPECT_THROW(dilate(BinaryMask(2, 2), -1), InputError);
}

TEST(Binarize, StrictThreshold)
{
  const ProbMap p(3, 1, std::vector<double>{0.49, 0.5, 0.51});
  const BinaryMask b = binarize(p, 0.5);
  EXPECT_EQ(b[0], 0);
  EXPECT_EQ(b[1], 0);
  EXPECT_EQ(b[2], 1);
  EXPECT_THROW(binarize(p, 0.0), InputError);
  EXPECT_THROW(binarize(p, 1.0), InputError);
}
