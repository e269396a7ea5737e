#pragma once

#include <cstdint>
#include <vector>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/geom/grid.hpp"

namespace sepwidth::foam {

/// Converts raster facet area of blob boundaries to continuum area.
struct Calibration {
  double lambda = 0.0;
  int resolution = 0;
  double mc_area = 0.0, mc_area_se = 0.0;  // coarea estimate of vol(S_lambda)
  double raster_area = 0.0;                // facet area of a single blob, mean over shifts
  double factor = 1.0;                     // mc_area / raster_area
};

Calibration calibrate_boundary(int n, double lambda, int resolution, std::size_t samples,
                               std::uint64_t seed);

/// Periodic foam built from random translates of the blob D = {f >= lambda}.
/// grid holds, per cell, the step (0-based) of the first blob containing its
/// center, or -1. The separator S_k is the set of facets between cells of
/// different value.
struct FoamState {
  int dim = 0;
  int resolution = 0;
  double lambda = 0.0;
  geom::TorusGrid grid;
  std::vector<std::vector<double>> shifts;  // v_i, one per step
  int steps = 0;
  std::vector<std::size_t> facets_per_step;  // |S_i| in facets, i = 1..steps
  std::size_t facets = 0;
  double calibration = 1.0;
  double boundary_measure = 0.0;  // facets * h^(N-1) * calibration
  bool separated = false;
  // Region analysis of the label grid (equal-value components).
  std::size_t regions = 0;
  int max_region_extent = 0;
  bool any_region_winding = false;
  std::size_t unowned_cells = 0;
  // Free components of the dilated separator mask.
  std::size_t free_components = 0;
  int max_free_extent = 0;
  bool any_free_winding = false;
};

/// Raised when max_steps blobs do not separate; carries the partial state.
class SeparationFailure : public SearchExhausted {
 public:
  SeparationFailure(const std::string& what, FoamState state)
      : SearchExhausted(what), state_(std::move(state)) {}
  const FoamState& state() const { return state_; }

 private:
  FoamState state_;
};

struct UnionOptions {
  int max_steps = 0;           // 0: 64 * N
  double calibration = 0.0;    // <= 0: calibrate with the settings below
  std::size_t calibration_samples = 200000;
};

/// Adds blobs at uniform random shifts until the label regions and the free
/// components of the dilated separator are all non-winding with extent < R.
/// N <= 4, lambda in (0, 1]. Throws SeparationFailure after max_steps.
FoamState union_process(int n, double lambda, int resolution, std::uint64_t seed,
                        const UnionOptions& options = {});

/// Recomputes the region and free-component fields of `state` from its grid.
void analyze(FoamState& state);

/// Union of the (N-m-1)-dimensional coordinate flats at spacing w, rasterized
/// one cell thick, with the closed per-cube measure 2^(m+1) C(N, m+1)
/// w^(N-m-1) and the same quantity measured on the raster.
struct CubicSeparator {
  geom::TorusGrid grid;
  double formula = 0.0;
  double measured = 0.0;
};

/// 0 <= m <= N-1; w * resolution must be a positive integer dividing R.
CubicSeparator cubic_separator(int n, int m, double w, int resolution);

}  // namespace sepwidth::foam
