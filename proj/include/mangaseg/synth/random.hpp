#ifndef MANGASEG_SYNTH_RANDOM_HPP_
#define MANGASEG_SYNTH_RANDOM_HPP_

#include <cstdint>
#include <limits>
#include <random>
#include <span>

namespace mangaseg::synth
{

// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The std:: distributions are not, so the few draws we need are
// spelled out here to keep seeded outputs identical across toolchains.

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi)
{
  if (hi <= lo) return lo;
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % range);
}

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& rng, double lo, double hi)
{
  return lo + (hi - lo) * uniform01(rng);
}

inline bool chance(Rng& rng, double p) { return uniform01(rng) < p; }

/// Index drawn with probability proportional to its weight.
inline std::size_t weighted_index(Rng& rng, std::span<const double> weights)
{
  double total = 0.0;
  for (double w : weights) total += w;
  double x = uniform01(rng) * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.empty() ? 0 : weights.size() - 1;
}

} // namespace mangaseg::synth

#endif
