#include "sepwidth/geom/montecarlo.hpp"

#include "sepwidth/common/errors.hpp"

namespace sepwidth::geom {

Estimate mc_volume(int dim, const std::function<bool(std::span<const double>)>& indicator,
                   std::size_t samples, std::uint64_t seed) {
  if (samples < 100) throw PreconditionError("mc_volume needs at least 100 samples");
  if (dim < 1) throw PreconditionError("mc_volume dimension must be positive");
  const auto parts = mc_chunks<MeanAccumulator>(samples, seed, [&](Rng& rng, std::size_t count) {
    MeanAccumulator acc;
    std::vector<double> x(static_cast<std::size_t>(dim));
    for (std::size_t s = 0; s < count; ++s) {
      for (auto& v : x) v = rng.uniform();
      acc.add(indicator(x) ? 1.0 : 0.0);
    }
    return acc;
  });
  MeanAccumulator total;
  for (const auto& p : parts) total.merge(p);
  return total.estimate();
}

}  // namespace sepwidth::geom
