#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sepwidth/common/parallel.hpp"
#include "sepwidth/common/rng.hpp"

namespace sepwidth::geom {

struct Estimate {
  double value = 0.0;
  double se = 0.0;  // standard error of `value`
};

/// Running sum / sum of squares; merged in a fixed order so results do not
/// depend on how the samples were split across threads.
struct MeanAccumulator {
  std::size_t n = 0;
  double sum = 0.0, sumsq = 0.0;

  void add(double x) {
    ++n;
    sum += x;
    sumsq += x * x;
  }
  void merge(const MeanAccumulator& o) {
    n += o.n;
    sum += o.sum;
    sumsq += o.sumsq;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  /// Unbiased sample variance.
  double variance() const {
    if (n < 2) return 0.0;
    const double m = mean();
    return std::max(0.0, (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
  }
  Estimate estimate() const {
    return {mean(), n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0};
  }
};

/// Samples are drawn in fixed-size chunks; chunk c uses Rng(seed, c).
inline constexpr std::size_t kMcChunk = 8192;

/// Runs body(rng, count) once per chunk and returns the results in chunk
/// order.
template <class R>
std::vector<R> mc_chunks(std::size_t samples, std::uint64_t seed,
                         const std::function<R(Rng&, std::size_t)>& body) {
  const std::size_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<R> out(chunks);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng(seed, c);
    const std::size_t count = std::min(kMcChunk, samples - c * kMcChunk);
    out[c] = body(rng, count);
  });
  return out;
}

/// Fraction of [0,1]^dim on which `indicator` holds. samples >= 100.
Estimate mc_volume(int dim, const std::function<bool(std::span<const double>)>& indicator,
                   std::size_t samples, std::uint64_t seed);

}  // namespace sepwidth::geom
