#include "sepwidth/foam/union_process.hpp"

#include <cmath>
#include <numbers>

#include "sepwidth/foam/eigenfield.hpp"
#include "sepwidth/geom/field.hpp"
#include "sepwidth/kernels/kernels.hpp"
#include "sepwidth/sgnperm/averages.hpp"

namespace sepwidth::foam {

namespace {

constexpr double kPi = std::numbers::pi;

// Claims for `label` every unowned cell whose center lies in v + {f >= lambda}.
std::size_t claim_blob(geom::TorusGrid& g, const std::vector<double>& v, double lambda,
                       std::int32_t label) {
  const int n = g.dim(), r = g.res();
  // |sin(pi (x - v_k))| at cell centers, per axis.
  std::vector<std::vector<double>> profile(static_cast<std::size_t>(n),
                                           std::vector<double>(static_cast<std::size_t>(r)));
  for (int k = 0; k < n; ++k)
    for (int c = 0; c < r; ++c)
      profile[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)] =
          std::abs(std::sin(kPi * ((c + 0.5) / r - v[static_cast<std::size_t>(k)])));
  const auto& kt = kernels::active();
  const std::size_t rows = g.size() / static_cast<std::size_t>(r);
  const auto& last = profile[static_cast<std::size_t>(n - 1)];
  std::size_t claimed = 0;
  for (std::size_t row = 0; row < rows; ++row) {
    const std::size_t base = row * static_cast<std::size_t>(r);
    double scale = 1.0;
    for (int k = 0; k < n - 1; ++k)
      scale *= profile[static_cast<std::size_t>(k)][static_cast<std::size_t>(g.coord(base, k))];
    if (scale < lambda) continue;
    claimed += kt.claim_row(&g.cells()[base], last.data(), scale, lambda, label,
                            static_cast<std::size_t>(r));
  }
  return claimed;
}

geom::TorusGrid truncated(const geom::TorusGrid& g, int steps) {
  geom::TorusGrid out = g;
  for (auto& v : out.cells())
    if (v >= steps) v = -1;
  return out;
}

bool is_separated(const geom::TorusGrid& g) {
  if (!geom::region_components(g, true, true).separated(g.res())) return false;
  const auto mask = geom::dilate(geom::interface_mask(g), 1);
  return geom::grid_components(mask, true).separated(g.res());
}

}  // namespace

Calibration calibrate_boundary(int n, double lambda, int resolution, std::size_t samples,
                               std::uint64_t seed) {
  constexpr int kShifts = 8;
  Calibration c;
  c.lambda = lambda;
  c.resolution = resolution;
  const auto f = eigenfield(n);
  const auto e = geom::level_set_area_mc(f, lambda, geom::default_band(f), samples, seed);
  c.mc_area = e.area.value;
  c.mc_area_se = e.area.se;
  Rng rng(seed, 0xca1b);
  const double h = 1.0 / resolution;
  double total = 0.0;
  for (int s = 0; s < kShifts; ++s) {
    geom::TorusGrid g(n, resolution, -1);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.uniform();
    claim_blob(g, v, lambda, 0);
    total += static_cast<double>(geom::interface_facets(g)) * std::pow(h, n - 1);
  }
  c.raster_area = total / kShifts;
  c.factor = c.raster_area > 0.0 ? c.mc_area / c.raster_area : 1.0;
  return c;
}

void analyze(FoamState& s) {
  const auto regions = geom::region_components(s.grid, true, true);
  s.regions = regions.info.size();
  s.max_region_extent = 0;
  s.any_region_winding = false;
  for (const auto& c : regions.info) {
    s.max_region_extent = std::max(s.max_region_extent, c.extent);
    s.any_region_winding |= c.winding != 0;
  }
  s.unowned_cells = 0;
  for (auto v : s.grid.cells()) s.unowned_cells += v < 0;
  const auto free = geom::grid_components(geom::dilate(geom::interface_mask(s.grid), 1), true);
  s.free_components = free.info.size();
  s.max_free_extent = 0;
  s.any_free_winding = false;
  for (const auto& c : free.info) {
    s.max_free_extent = std::max(s.max_free_extent, c.extent);
    s.any_free_winding |= c.winding != 0;
  }
  s.separated = regions.separated(s.resolution) && free.separated(s.resolution);
}

FoamState union_process(int n, double lambda, int resolution, std::uint64_t seed,
                        const UnionOptions& options) {
  if (n < 1 || n > 4) throw PreconditionError("union_process supports 1 <= N <= 4");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw PreconditionError("lambda must lie in (0, 1]");
  if (resolution < 4) throw PreconditionError("resolution must be at least 4");
  const int max_steps = options.max_steps > 0 ? options.max_steps : 64 * n;

  FoamState s;
  s.dim = n;
  s.resolution = resolution;
  s.lambda = lambda;
  s.calibration = options.calibration > 0.0
                      ? options.calibration
                      : calibrate_boundary(n, lambda, resolution, options.calibration_samples,
                                           derive_seed(seed, 0xca11))
                            .factor;
  s.grid = geom::TorusGrid(n, resolution, -1);
  Rng rng(seed, 0x5e9);

  // Separation is monotone in the number of steps (regions only split), so
  // check at 1, 2, 4, ... and bisect back to the first separating step; the
  // grid at step k is the full grid truncated to labels < k.
  int lo = 0, hi = -1;
  int next_check = 1;
  for (int step = 1; step <= max_steps; ++step) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& x : v) x = rng.uniform();
    s.shifts.push_back(v);
    claim_blob(s.grid, v, lambda, step - 1);
    s.facets_per_step.push_back(geom::interface_facets(s.grid));
    if (step == next_check || step == max_steps) {
      if (is_separated(s.grid)) {
        hi = step;
        break;
      }
      lo = step;
      next_check *= 2;
    }
  }
  if (hi > 0) {
    while (hi - lo > 1) {
      const int mid = lo + (hi - lo) / 2;
      if (is_separated(truncated(s.grid, mid))) hi = mid;
      else lo = mid;
    }
    s.grid = truncated(s.grid, hi);
    s.shifts.resize(static_cast<std::size_t>(hi));
    s.facets_per_step.resize(static_cast<std::size_t>(hi));
  }
  s.steps = static_cast<int>(s.shifts.size());
  s.facets = s.facets_per_step.empty() ? 0 : s.facets_per_step.back();
  s.boundary_measure = static_cast<double>(s.facets) * std::pow(1.0 / resolution, n - 1) *
                       s.calibration;
  analyze(s);
  if (hi < 0) {
    throw SeparationFailure("no separation after " + std::to_string(max_steps) + " steps",
                            std::move(s));
  }
  return s;
}

CubicSeparator cubic_separator(int n, int m, double w, int resolution) {
  if (m < 0 || m > n - 1) throw PreconditionError("cubic_separator needs 0 <= m <= N-1");
  const double cells = w * resolution;
  const auto period = static_cast<int>(std::lround(cells));
  if (period < 1 || std::abs(cells - period) > 1e-9 || resolution % period != 0)
    throw PreconditionError("w * R must be a positive integer dividing R");
  CubicSeparator out;
  out.grid = geom::TorusGrid(n, resolution, 0);
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    int on = 0;
    for (int k = 0; k < n; ++k) on += out.grid.coord(i, k) % period == 0;
    if (on >= m + 1) out.grid[i] = 1;
  }
  out.formula = std::pow(2.0, m + 1) * sgnperm::binomial(n, m + 1) * std::pow(w, n - m - 1);
  // Each flat family (choice of m+1 axes) has (R/p)^(m+1) R^(N-m-1) cells of
  // thickness h in m+1 directions; every flat piece bounds 2^(m+1) cubes.
  const double h = 1.0 / resolution;
  const double per_family = std::pow(static_cast<double>(resolution / period), m + 1) *
                            std::pow(static_cast<double>(resolution), n - m - 1) *
                            std::pow(h, n - m - 1);
  const double cubes = std::pow(1.0 / w, n);
  out.measured =
      sgnperm::binomial(n, m + 1) * per_family * std::pow(2.0, m + 1) / cubes;
  return out;
}

}  // namespace sepwidth::foam
