#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sepwidth/geom/montecarlo.hpp"

namespace sepwidth::foam {

/// Per-lambda estimates for the level sets S = {f = lambda} and sublevel sets
/// Omega = {f <= lambda} of the eigenfield, one unit cell.
struct RatioRecord {
  double lambda = 0.0;
  geom::Estimate area;              // vol_{N-1}(S)
  geom::Estimate volume;            // vol_N(Omega)
  geom::Estimate ratio;             // area / vol(Omega)
  geom::Estimate ratio_min;         // area / min(vol Omega, 1 - vol Omega)
  geom::Estimate ratio_complement;  // area / (1 - vol Omega): blob {f >= lambda}
  std::size_t band_hits = 0;
  bool degenerate = false;          // coarea band leaves [0, 1]
  bool band_consistent = true;
};

struct RatioCurve {
  int dim = 0;
  double band = 0.0;
  std::size_t samples = 0;
  std::vector<RatioRecord> records;  // increasing lambda

  /// Index minimizing `ratio` over non-degenerate records with vol(Omega)
  /// <= 1/2, or -1.
  int best_ratio() const;
  /// Index minimizing `ratio_min` over non-degenerate records, or -1.
  int best_ratio_min() const;
  /// Index minimizing `ratio_complement` over non-degenerate records with
  /// lambda >= floor, or -1.
  int best_complement(double lambda_floor) const;
};

/// 64 log-spaced values from 0.01 to 0.99.
std::vector<double> default_lambda_grid();

/// Smallest lambda whose blob {f >= lambda} still leaves a one-cell wall at
/// resolution R: sin(pi / R).
double lambda_floor(int resolution);

/// 1 <= N <= 6; samples >= 100; lambdas strictly increasing in (0, 1].
RatioCurve ratio_sweep(int n, std::span<const double> lambdas, std::size_t samples,
                       std::uint64_t seed);

/// 2 pi sqrt(N).
double foam_bound(int n);

}  // namespace sepwidth::foam
