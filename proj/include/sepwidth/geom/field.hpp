#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sepwidth/geom/montecarlo.hpp"

namespace sepwidth::geom {

/// A function on [0,1]^dim with its gradient. `batch`, when set, evaluates
/// value and gradient norm for `count` points stored dimension-major
/// (coords[d * count + p]).
struct ScalarField {
  int dim = 1;
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
  std::function<void(std::size_t count, const double* coords, double* value, double* grad_norm)>
      batch;
  double min_value = 0.0, max_value = 1.0;  // range of f on the domain

  void evaluate(std::size_t count, const double* coords, double* value, double* grad_norm) const;
};

/// Largest relative error between the analytic gradient and central finite
/// differences at `samples` uniform points. Points where the gradient norm is
/// below 1e-3 are compared in absolute terms.
double gradient_check(const ScalarField& f, std::size_t samples, std::uint64_t seed);

struct LevelSetEstimate {
  double lambda = 0.0;
  double band = 0.0;
  Estimate area;            // coarea estimate of vol_{N-1}{f = lambda}
  Estimate area_half_band;  // same samples, band halved
  Estimate volume;          // vol_N{f <= lambda}
  double cov_area_volume = 0.0;  // covariance of the two means
  std::size_t band_hits = 0;
  bool empty_band = false;       // no sample landed in the band
  bool degenerate = false;       // band leaves [min f, max f]
  bool band_consistent = true;   // |area - area_half_band| < 2 SE(half band)
};

/// 0.02 * (max f - min f).
double default_band(const ScalarField& f);

/// One pass over the samples serves every lambda. `lambdas` must be strictly
/// increasing; band > 0.
std::vector<LevelSetEstimate> level_set_sweep_mc(const ScalarField& f,
                                                 std::span<const double> lambdas, double band,
                                                 std::size_t samples, std::uint64_t seed);

LevelSetEstimate level_set_area_mc(const ScalarField& f, double lambda, double band,
                                   std::size_t samples, std::uint64_t seed);

}  // namespace sepwidth::geom
