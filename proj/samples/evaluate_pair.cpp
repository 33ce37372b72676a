// Scores a small hand-made prediction against a two-class ground truth in
// both evaluation modes, then cleans the prediction with remove_noise.

#include <cstdio>

#include "mangaseg/metrics.hpp"
#include "mangaseg/postprocess.hpp"

using namespace mangaseg;

namespace
{

void fill(ClassMask& m, int x0, int y0, int w, int h, TextClass c)
{
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) m(x, y) = c;
}

void fill(BinaryMask& m, int x0, int y0, int w, int h)
{
  for (int y = y0; y < y0 + h; ++y)
    for (int x = x0; x < x0 + w; ++x) m.set(x, y, true);
}

void print(const MetricsReport& r)
{
  std::printf("%-8s pf1 %.3f  r_quant %.3f  p_quant %.3f  f1_qual %.3f  gf1 %.3f\n", to_string(r.mode),
              r.pixel.pf1, r.component.r_quant, r.component.p_quant, r.component.f1_qual, r.component.gf1);
}

} // namespace

int main()
{
  ClassMask gt(96, 48);
  fill(gt, 4, 4, 10, 12, TextClass::Easy);
  fill(gt, 20, 4, 10, 12, TextClass::Easy);
  fill(gt, 40, 10, 16, 16, TextClass::Hard);

  BinaryMask pred(96, 48);
  fill(pred, 5, 4, 10, 12); // shifted by one pixel
  fill(pred, 20, 4, 10, 8); // upper two thirds only
  fill(pred, 41, 11, 14, 14);
  fill(pred, 88, 40, 2, 2); // stray blob

  const PairEvaluator ev(gt, pred, RelaxConfig{1});
  for (Mode m : {Mode::Normal, Mode::Relaxed}) print(ev.evaluate(m, "sample"));

  const BinaryMask cleaned = remove_noise(pred);
  std::printf("remove_noise: %lld -> %lld text pixels\n", static_cast<long long>(pred.count()),
              static_cast<long long>(cleaned.count()));
  for (Mode m : {Mode::Normal, Mode::Relaxed}) print(evaluate(gt, cleaned, m));
  return 0;
}
