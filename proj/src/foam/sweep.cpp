#include "sepwidth/foam/sweep.hpp"

#include <cmath>
#include <numbers>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/foam/eigenfield.hpp"
#include "sepwidth/geom/field.hpp"

namespace sepwidth::foam {

namespace {

// Delta-method ratio a / w where w = v (sign +1) or w = 1 - v (sign -1).
geom::Estimate ratio_of(const geom::Estimate& a, const geom::Estimate& v, double cov,
                        bool complement) {
  const double w = complement ? 1.0 - v.value : v.value;
  if (!(w > 0.0)) return {INFINITY, INFINITY};
  const double r = a.value / w;
  const double cov_aw = complement ? -cov : cov;
  const double var = a.se * a.se / (w * w) + r * r * v.se * v.se / (w * w) -
                     2.0 * r * cov_aw / (w * w);
  return {r, std::sqrt(std::max(0.0, var))};
}

}  // namespace

int RatioCurve::best_ratio() const {
  int best = -1;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.degenerate || r.volume.value > 0.5 || !(r.volume.value > 0.0)) continue;
    if (best < 0 || r.ratio.value < records[static_cast<std::size_t>(best)].ratio.value)
      best = static_cast<int>(i);
  }
  return best;
}

int RatioCurve::best_ratio_min() const {
  int best = -1;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.degenerate || !std::isfinite(r.ratio_min.value)) continue;
    if (best < 0 || r.ratio_min.value < records[static_cast<std::size_t>(best)].ratio_min.value)
      best = static_cast<int>(i);
  }
  return best;
}

int RatioCurve::best_complement(double lambda_floor) const {
  int best = -1;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.degenerate || r.lambda < lambda_floor || !std::isfinite(r.ratio_complement.value))
      continue;
    if (best < 0 ||
        r.ratio_complement.value < records[static_cast<std::size_t>(best)].ratio_complement.value)
      best = static_cast<int>(i);
  }
  return best;
}

std::vector<double> default_lambda_grid() {
  constexpr int kPoints = 64;
  const double lo = std::log(0.01), hi = std::log(0.99);
  std::vector<double> out;
  for (int i = 0; i < kPoints; ++i) out.push_back(std::exp(lo + (hi - lo) * i / (kPoints - 1)));
  return out;
}

double lambda_floor(int resolution) { return std::sin(std::numbers::pi / resolution); }

double foam_bound(int n) { return 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(n)); }

RatioCurve ratio_sweep(int n, std::span<const double> lambdas, std::size_t samples,
                       std::uint64_t seed) {
  if (n < 1 || n > 6) throw PreconditionError("ratio_sweep supports 1 <= N <= 6");
  for (double l : lambdas)
    if (!(l > 0.0 && l <= 1.0)) throw PreconditionError("lambda must lie in (0, 1]");
  const auto f = eigenfield(n);
  RatioCurve curve;
  curve.dim = n;
  curve.band = geom::default_band(f);
  curve.samples = samples;
  for (const auto& e : geom::level_set_sweep_mc(f, lambdas, curve.band, samples, seed)) {
    RatioRecord r;
    r.lambda = e.lambda;
    r.area = e.area;
    r.volume = e.volume;
    r.ratio = ratio_of(e.area, e.volume, e.cov_area_volume, false);
    r.ratio_complement = ratio_of(e.area, e.volume, e.cov_area_volume, true);
    r.ratio_min = e.volume.value <= 0.5 ? r.ratio : r.ratio_complement;
    r.band_hits = e.band_hits;
    r.degenerate = e.degenerate || e.empty_band;
    r.band_consistent = e.band_consistent;
    curve.records.push_back(r);
  }
  return curve;
}

}  // namespace sepwidth::foam
