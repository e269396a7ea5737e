#include "sepwidth/geom/field.hpp"

#include <algorithm>
#include <cmath>

#include "sepwidth/common/errors.hpp"

namespace sepwidth::geom {

void ScalarField::evaluate(std::size_t count, const double* coords, double* out_value,
                           double* grad_norm) const {
  if (batch) {
    batch(count, coords, out_value, grad_norm);
    return;
  }
  const auto n = static_cast<std::size_t>(dim);
  std::vector<double> x(n), g(n);
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t d = 0; d < n; ++d) x[d] = coords[d * count + p];
    out_value[p] = value(x);
    gradient(x, g);
    double s = 0.0;
    for (double v : g) s += v * v;
    grad_norm[p] = std::sqrt(s);
  }
}

double gradient_check(const ScalarField& f, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(f.dim);
  const double h = 1e-6;
  std::vector<double> x(n), g(n);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (auto& v : x) v = rng.uniform(h, 1.0 - h);
    f.gradient(x, g);
    double err = 0.0, scale = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      auto xp = x, xm = x;
      xp[d] += h;
      xm[d] -= h;
      const double fd = (f.value(xp) - f.value(xm)) / (2.0 * h);
      err += (fd - g[d]) * (fd - g[d]);
      scale += g[d] * g[d];
    }
    err = std::sqrt(err);
    scale = std::sqrt(scale);
    worst = std::max(worst, scale < 1e-3 ? err : err / scale);
  }
  return worst;
}

double default_band(const ScalarField& f) { return 0.02 * (f.max_value - f.min_value); }

namespace {

struct SweepChunk {
  std::vector<double> g_sum, g_sq, gv_sum, h_sum, h_sq;
  std::vector<std::size_t> hits;
  std::vector<long> v_diff;  // difference array for counts of f <= lambda
};

}  // namespace

std::vector<LevelSetEstimate> level_set_sweep_mc(const ScalarField& f,
                                                 std::span<const double> lambdas, double band,
                                                 std::size_t samples, std::uint64_t seed) {
  if (!(band > 0.0)) throw PreconditionError("band must be positive");
  if (samples < 100) throw PreconditionError("level_set_area_mc needs at least 100 samples");
  for (std::size_t i = 1; i < lambdas.size(); ++i)
    if (!(lambdas[i] > lambdas[i - 1]))
      throw PreconditionError("lambda grid must be strictly increasing");
  const std::size_t L = lambdas.size();
  const auto dim = static_cast<std::size_t>(f.dim);
  const double half = 0.5 * band;

  const auto parts = mc_chunks<SweepChunk>(samples, seed, [&](Rng& rng, std::size_t count) {
    SweepChunk c;
    c.g_sum.assign(L, 0.0);
    c.g_sq.assign(L, 0.0);
    c.gv_sum.assign(L, 0.0);
    c.h_sum.assign(L, 0.0);
    c.h_sq.assign(L, 0.0);
    c.hits.assign(L, 0);
    c.v_diff.assign(L + 1, 0);
    std::vector<double> coords(dim * count), value(count), grad(count);
    // Draw point by point so the stream does not depend on the layout.
    for (std::size_t p = 0; p < count; ++p)
      for (std::size_t d = 0; d < dim; ++d) coords[d * count + p] = rng.uniform();
    f.evaluate(count, coords.data(), value.data(), grad.data());
    for (std::size_t p = 0; p < count; ++p) {
      const double fv = value[p];
      const auto first_ge =
          static_cast<std::size_t>(std::lower_bound(lambdas.begin(), lambdas.end(), fv) -
                                   lambdas.begin());
      ++c.v_diff[first_ge];
      // lambdas with |f - lambda| < band/2.
      auto lo = static_cast<std::size_t>(
          std::upper_bound(lambdas.begin(), lambdas.end(), fv - half) - lambdas.begin());
      for (std::size_t i = lo; i < L && lambdas[i] < fv + half; ++i) {
        if (!(std::abs(fv - lambdas[i]) < half)) continue;
        const double g = grad[p] / band;
        c.g_sum[i] += g;
        c.g_sq[i] += g * g;
        if (fv <= lambdas[i]) c.gv_sum[i] += g;
        ++c.hits[i];
        if (std::abs(fv - lambdas[i]) < 0.5 * half) {
          const double h2 = 2.0 * g;
          c.h_sum[i] += h2;
          c.h_sq[i] += h2 * h2;
        }
      }
    }
    return c;
  });

  std::vector<double> g_sum(L, 0.0), g_sq(L, 0.0), gv_sum(L, 0.0), h_sum(L, 0.0), h_sq(L, 0.0);
  std::vector<std::size_t> hits(L, 0);
  std::vector<long> v_diff(L + 1, 0);
  for (const auto& c : parts) {
    for (std::size_t i = 0; i < L; ++i) {
      g_sum[i] += c.g_sum[i];
      g_sq[i] += c.g_sq[i];
      gv_sum[i] += c.gv_sum[i];
      h_sum[i] += c.h_sum[i];
      h_sq[i] += c.h_sq[i];
      hits[i] += c.hits[i];
    }
    for (std::size_t i = 0; i <= L; ++i) v_diff[i] += c.v_diff[i];
  }

  const auto n = static_cast<double>(samples);
  auto mean_se = [n](double sum, double sq) {
    const double m = sum / n;
    const double var = std::max(0.0, (sq - n * m * m) / (n - 1.0));
    return Estimate{m, std::sqrt(var / n)};
  };
  std::vector<LevelSetEstimate> out(L);
  long below = 0;
  for (std::size_t i = 0; i < L; ++i) {
    below += v_diff[i];
    auto& e = out[i];
    e.lambda = lambdas[i];
    e.band = band;
    e.area = mean_se(g_sum[i], g_sq[i]);
    e.area_half_band = mean_se(h_sum[i], h_sq[i]);
    const double p = static_cast<double>(below) / n;
    e.volume = {p, std::sqrt(p * (1.0 - p) / (n - 1.0))};
    e.cov_area_volume = (gv_sum[i] / n - e.area.value * p) / (n - 1.0);
    e.band_hits = hits[i];
    e.empty_band = hits[i] == 0;
    e.degenerate = lambdas[i] - half < f.min_value || lambdas[i] + half > f.max_value;
    e.band_consistent =
        std::abs(e.area.value - e.area_half_band.value) < 2.0 * e.area_half_band.se ||
        e.area.value == e.area_half_band.value;
  }
  return out;
}

LevelSetEstimate level_set_area_mc(const ScalarField& f, double lambda, double band,
                                   std::size_t samples, std::uint64_t seed) {
  const double l[] = {lambda};
  return level_set_sweep_mc(f, l, band, samples, seed)[0];
}

}  // namespace sepwidth::geom
