#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "sepwidth/foam/eigenfield.hpp"
#include "sepwidth/foam/sweep.hpp"
#include "sepwidth/foam/union_process.hpp"
#include "sepwidth/geom/grid.hpp"
#include "sepwidth/kernels/kernels.hpp"

namespace sepwidth::foam {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Eigenfield, Examples) {
  for (int n = 1; n <= 5; ++n) {
    const auto f = eigenfield(n);
    std::vector<double> mid(static_cast<std::size_t>(n), 0.5);
    EXPECT_NEAR(f.value(mid), 1.0, 1e-15);
    mid[0] = 0.0;
    EXPECT_EQ(f.value(mid), 0.0);
  }
  EXPECT_NEAR(eigenfield(2).value(std::vector<double>{0.25, 0.25}), 0.5, 1e-15);
}

TEST(Eigenfield, EigenvalueAndGradient) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_LT(eigenvalue_check(n, 1000, 10 + static_cast<std::uint64_t>(n)), 1e-6);
    EXPECT_LT(geom::gradient_check(eigenfield(n), 1000, 20), 1e-4);
  }
}

TEST(Eigenfield, BatchMatchesPointwise) {
  const int n = 3;
  const auto f = eigenfield(n);
  Rng rng(5);
  const std::size_t count = 37;
  std::vector<double> coords(n * count), value(count), grad(count);
  for (auto& x : coords) x = rng.uniform();
  f.evaluate(count, coords.data(), value.data(), grad.data());
  for (std::size_t p = 0; p < count; ++p) {
    std::vector<double> x{coords[p], coords[count + p], coords[2 * count + p]}, g(3);
    EXPECT_NEAR(value[p], f.value(x), 1e-14);
    f.gradient(x, g);
    EXPECT_NEAR(grad[p], std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]), 1e-13);
  }
}

TEST(RatioSweep, OneDimensionalClosedForm) {
  const auto grid = default_lambda_grid();
  ASSERT_EQ(grid.size(), 64u);
  const auto curve = ratio_sweep(1, grid, 200000, 1);
  for (const auto& r : curve.records) {
    if (r.degenerate) continue;
    const double vol = 2.0 * std::asin(r.lambda) / kPi;
    EXPECT_LT(std::abs(r.volume.value - vol), 4 * r.volume.se + 1e-12) << r.lambda;
    // Two level-set points; the band estimator is exact up to MC noise.
    EXPECT_LT(std::abs(r.area.value - 2.0), 4 * r.area.se + 1e-9) << r.lambda;
  }
  const int best = curve.best_ratio();
  ASSERT_GE(best, 0);
  const auto& b = curve.records[static_cast<std::size_t>(best)];
  EXPECT_NEAR(b.ratio.value, kPi / std::asin(b.lambda), 0.2);
  EXPECT_LE(b.ratio.value, foam_bound(1) + 4 * b.ratio.se);
  // Unrestricted, the ratio falls toward 2 as lambda -> 1.
  EXPECT_LT(curve.records.back().ratio.value, 2.3);
}

TEST(RatioSweep, BoundHoldsInLowDimensions) {
  EXPECT_NEAR(foam_bound(2), 8.8858, 1e-4);
  for (int n = 2; n <= 3; ++n) {
    const auto curve = ratio_sweep(n, default_lambda_grid(), 50000, 7);
    const auto& b = curve.records[static_cast<std::size_t>(curve.best_ratio())];
    EXPECT_LE(b.ratio.value, foam_bound(n) + 4 * b.ratio.se);
    EXPECT_LE(b.volume.value, 0.5);
  }
}

TEST(RatioSweep, DegenerateBandsAreFlagged) {
  const std::vector<double> lambdas{0.005, 0.5, 0.995};
  const auto curve = ratio_sweep(2, lambdas, 10000, 2);
  EXPECT_TRUE(curve.records[0].degenerate);
  EXPECT_FALSE(curve.records[1].degenerate);
  EXPECT_TRUE(curve.records[2].degenerate);
  EXPECT_THROW(ratio_sweep(7, lambdas, 1000, 1), PreconditionError);
}

TEST(RatioSweep, Deterministic) {
  const auto a = ratio_sweep(2, default_lambda_grid(), 20000, 9);
  const auto b = ratio_sweep(2, default_lambda_grid(), 20000, 9);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].ratio.value, b.records[i].ratio.value);
    EXPECT_EQ(a.records[i].ratio.se, b.records[i].ratio.se);
  }
}

TEST(UnionProcess, FullLevelNeverSeparates) {
  UnionOptions o;
  o.max_steps = 6;
  o.calibration = 1.0;
  try {
    union_process(2, 1.0, 32, 1, o);
    FAIL() << "expected SeparationFailure";
  } catch (const SeparationFailure& e) {
    EXPECT_EQ(e.state().steps, 6);
    EXPECT_EQ(e.state().facets, 0u);
    EXPECT_FALSE(e.state().separated);
    EXPECT_EQ(e.state().boundary_measure, 0.0);
  }
}

TEST(UnionProcess, SeparatesAndIsDeterministic) {
  UnionOptions o;
  o.calibration = 0.9;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = union_process(2, 0.06, 64, seed, o);
    EXPECT_TRUE(s.separated);
    EXPECT_FALSE(s.any_region_winding);
    EXPECT_LT(s.max_region_extent, 64);
    EXPECT_FALSE(s.any_free_winding);
    EXPECT_LT(s.max_free_extent, 64);
    EXPECT_EQ(static_cast<int>(s.shifts.size()), s.steps);
    for (std::size_t i = 1; i < s.facets_per_step.size(); ++i)
      EXPECT_GE(s.facets_per_step[i], s.facets_per_step[i - 1]);
    EXPECT_EQ(s.facets, geom::interface_facets(s.grid));
    // Not separated one step earlier.
    if (s.steps > 1) {
      UnionOptions shorter = o;
      shorter.max_steps = s.steps - 1;
      EXPECT_THROW(union_process(2, 0.06, 64, seed, shorter), SeparationFailure);
    }
    const auto again = union_process(2, 0.06, 64, seed, o);
    EXPECT_EQ(again.grid, s.grid);
    EXPECT_EQ(again.boundary_measure, s.boundary_measure);
  }
}

TEST(UnionProcess, KernelBackendsAgree) {
  if (!kernels::avx2_supported()) GTEST_SKIP();
  UnionOptions o;
  o.calibration = 1.0;
  const auto before = kernels::active_backend();
  kernels::set_backend(kernels::Backend::kScalar);
  const auto a = union_process(3, 0.2, 24, 4, o);
  kernels::set_backend(kernels::Backend::kAvx2);
  const auto b = union_process(3, 0.2, 24, 4, o);
  kernels::set_backend(before);
  EXPECT_EQ(a.grid, b.grid);
}

TEST(UnionProcess, CalibrationIsBelowOne) {
  const auto c = calibrate_boundary(2, 0.06, 128, 100000, 3);
  EXPECT_GT(c.factor, 0.6);
  EXPECT_LE(c.factor, 1.0);
  EXPECT_NEAR(c.mc_area, 3.47, 0.1);
}

TEST(CubicSeparator, FormulaValues) {
  EXPECT_DOUBLE_EQ(cubic_separator(3, 0, 1.0, 8).formula, 6.0);
  EXPECT_DOUBLE_EQ(cubic_separator(2, 0, 1.0, 8).formula, 4.0);
  EXPECT_DOUBLE_EQ(cubic_separator(3, 1, 1.0, 8).formula, 12.0);
  EXPECT_DOUBLE_EQ(cubic_separator(3, 2, 1.0, 8).formula, 8.0);
  for (int n = 1; n <= 3; ++n)
    for (int m = 0; m < n; ++m) {
      const auto s = cubic_separator(n, m, 0.5, 16);
      EXPECT_NEAR(s.measured, s.formula, 1e-12) << n << " " << m;
    }
  EXPECT_THROW(cubic_separator(2, 2, 1.0, 8), PreconditionError);
  EXPECT_THROW(cubic_separator(2, 0, 0.3, 8), PreconditionError);
}

TEST(CubicSeparator, HypersurfaceSeparates) {
  const auto s = cubic_separator(3, 0, 0.25, 32);
  const auto c = geom::grid_components(s.grid, true);
  EXPECT_EQ(c.info.size(), 64u);
  EXPECT_TRUE(c.separated(32));
  // A codimension-2 skeleton does not.
  EXPECT_FALSE(geom::grid_components(cubic_separator(3, 1, 0.25, 32).grid, true).separated(32));
}

TEST(CubicSeparator, FoamBeatsLatticeOnlyInHighDimension) {
  for (int n = 1; n <= 12; ++n)
    EXPECT_EQ(foam_bound(n) < 2.0 * n, n > kPi * kPi) << n;
}

}  // namespace
}  // namespace sepwidth::foam
