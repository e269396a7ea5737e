#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "sepwidth/cli/generators.hpp"
#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/parallel.hpp"
#include "sepwidth/geom/bvh.hpp"
#include "sepwidth/geom/clip.hpp"
#include "sepwidth/geom/field.hpp"
#include "sepwidth/geom/grid.hpp"
#include "sepwidth/geom/intersect.hpp"
#include "sepwidth/geom/io.hpp"
#include "sepwidth/geom/montecarlo.hpp"

namespace sepwidth::geom {
namespace {

constexpr double kPi = std::numbers::pi;

TriMesh unit_square() {
  TriMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

TEST(MeshArea, Examples) {
  EXPECT_DOUBLE_EQ(mesh_area(unit_square()), 1.0);
  EXPECT_EQ(mesh_area(TriMesh{}), 0.0);
  const double r = 1.7;
  EXPECT_NEAR(mesh_area(cli::icosphere(r, 4)) / (4 * kPi * r * r), 1.0, 0.01);
}

TEST(MeshArea, DegenerateTriangleWarns) {
  TriMesh m = unit_square();
  m.vertices.push_back({2, 0, 0});
  m.triangles.push_back({0, 1, 4});  // collinear
  std::vector<std::string> warnings;
  EXPECT_DOUBLE_EQ(mesh_area(m, &warnings), 1.0);
  ASSERT_EQ(warnings.size(), 1u);
}

TEST(MeshArea, ClosedAndEuler) {
  const auto s = cli::icosphere(1, 2);
  EXPECT_TRUE(is_closed(s));
  EXPECT_EQ(euler_characteristic(s), 2);
  const auto t = cli::torus(2, 0.5, 24, 12);
  EXPECT_TRUE(is_closed(t));
  EXPECT_EQ(euler_characteristic(t), 0);
  EXPECT_FALSE(is_closed(unit_square()));
}

TEST(TriTri, ParallelPlanesAreDisjoint) {
  const Triangle a{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const Triangle b{{0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
  EXPECT_EQ(tri_tri_intersection(a, b).kind, TriTriKind::kEmpty);
}

TEST(TriTri, PerpendicularCrossing) {
  // The vertical triangle meets z = 0 in x = 1/4, y in [-1/4, 5/4]; the right
  // triangle spans y in [0, 3/4] at x = 1/4.
  const Triangle a{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const Triangle b{{0.25, -1, -1}, {0.25, 2, -1}, {0.25, 0.5, 1}};
  const auto r = tri_tri_intersection(a, b);
  ASSERT_EQ(r.kind, TriTriKind::kSegment);
  const Vec3 lo = r.p.y < r.q.y ? r.p : r.q, hi = r.p.y < r.q.y ? r.q : r.p;
  EXPECT_NEAR(lo.x, 0.25, 1e-15);
  EXPECT_NEAR(lo.y, 0.0, 1e-15);
  EXPECT_NEAR(hi.y, 0.75, 1e-15);
  EXPECT_NEAR(hi.z, 0.0, 1e-15);
  EXPECT_GT(norm(r.q - r.p), 0.7);
}

TEST(TriTri, SharedVertexOnly) {
  const Triangle a{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const Triangle b{{0, 0, 0}, {-1, 0, 1}, {0, -1, 1}};
  const auto r = tri_tri_intersection(a, b);
  if (r.kind == TriTriKind::kSegment) EXPECT_LE(norm(r.q - r.p), 1e-12);
  else EXPECT_EQ(r.kind, TriTriKind::kEmpty);
}

TEST(TriTri, Coplanar) {
  const Triangle a{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  const Triangle b{{0.1, 0.1, 0}, {2, 0, 0}, {0, 2, 0}};
  EXPECT_EQ(tri_tri_intersection(a, b).kind, TriTriKind::kCoplanar);
}

TEST(SegmentHits, Examples) {
  const auto sphere = cli::icosphere(1, 3);
  EXPECT_EQ(segment_mesh_hits({{5, 5, 5}, {6, 7, 8}}, sphere).count(), 0u);
  const Vec3 d = normalized(Vec3{0.3141, 0.2718, 0.9});
  const auto chord = segment_mesh_hits({d * -2.0, d * 2.0}, sphere);
  EXPECT_FALSE(chord.degenerate);
  ASSERT_EQ(chord.count(), 2u);
  EXPECT_LT(chord.hits[0].t, chord.hits[1].t);
  // Through a vertex.
  const Vec3 v = sphere.vertices[0];
  EXPECT_TRUE(segment_mesh_hits({v * 0.5, v * 2.0}, sphere).degenerate);
  EXPECT_THROW(segment_mesh_hits({v, v}, sphere), PreconditionError);
}

TEST(SegmentHits, ParityAndBvhAgreement) {
  const auto mesh = cli::perturbed_sphere(1.0, 3, 0.3, 5);
  const MeshBvh bvh(mesh);
  Rng rng(99);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    auto dir = [&] { return normalized(Vec3{rng.normal(), rng.normal(), rng.normal()}); };
    const Segment s{dir() * 2.0, dir() * 2.0};
    const auto brute = segment_mesh_hits(s, mesh);
    const auto fast = segment_mesh_hits(s, bvh);
    ASSERT_EQ(brute.degenerate, fast.degenerate);
    ASSERT_EQ(brute.count(), fast.count());
    for (std::size_t k = 0; k < brute.count(); ++k) {
      EXPECT_EQ(brute.hits[k].triangle, fast.hits[k].triangle);
      EXPECT_EQ(brute.hits[k].t, fast.hits[k].t);
    }
    if (brute.degenerate) continue;
    ++checked;
    EXPECT_EQ(brute.count() % 2, 0u);
  }
  EXPECT_GT(checked, 990);
}

TEST(BvhQuery, BoxQueryMatchesScan) {
  const auto mesh = cli::torus(2, 0.6, 30, 14);
  const MeshBvh bvh(mesh);
  Box3 q;
  q.extend({0.5, -2.5, -0.1});
  q.extend({2.7, 0.3, 0.8});
  std::vector<int> found;
  bvh.query_box(q, [&](int i) { found.push_back(i); });
  std::sort(found.begin(), found.end());
  std::vector<int> expect;
  for (std::size_t i = 0; i < mesh.size(); ++i)
    if (mesh.triangle(i).bounds().overlaps(q)) expect.push_back(static_cast<int>(i));
  EXPECT_EQ(found, expect);
}

TEST(McVolume, Examples) {
  const auto all = mc_volume(3, [](std::span<const double>) { return true; }, 1000, 1);
  EXPECT_EQ(all.value, 1.0);
  EXPECT_EQ(all.se, 0.0);
  const auto half = mc_volume(2, [](std::span<const double> x) { return x[0] < 0.5; }, 20000, 2);
  EXPECT_LT(std::abs(half.value - 0.5), 4 * half.se);
  // {sin(pi x) <= sin(pi/4)} has measure 2 arcsin(lambda) / pi = 1/2.
  const double lambda = std::sin(kPi / 4);
  const auto omega = mc_volume(
      1, [lambda](std::span<const double> x) { return std::sin(kPi * x[0]) <= lambda; }, 50000, 3);
  EXPECT_LT(std::abs(omega.value - 0.5), 4 * omega.se);
  EXPECT_THROW(mc_volume(1, [](std::span<const double>) { return true; }, 99, 1),
               PreconditionError);
}

TEST(McVolume, DeterministicAcrossThreadCounts) {
  auto run = [] {
    return mc_volume(
        3, [](std::span<const double> x) { return x[0] * x[1] < x[2]; }, 100000, 17);
  };
  set_max_threads(1);
  const auto a = run();
  set_max_threads(3);
  const auto b = run();
  set_max_threads(1);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.se, b.se);
}

ScalarField sine_1d() {
  ScalarField f;
  f.dim = 1;
  f.value = [](std::span<const double> x) { return std::sin(kPi * x[0]); };
  f.gradient = [](std::span<const double> x, std::span<double> g) {
    g[0] = kPi * std::cos(kPi * x[0]);
  };
  return f;
}

ScalarField circle_distance(double cx, double cy) {
  ScalarField f;
  f.dim = 2;
  f.value = [=](std::span<const double> x) { return std::hypot(x[0] - cx, x[1] - cy); };
  f.gradient = [=](std::span<const double> x, std::span<double> g) {
    const double r = std::hypot(x[0] - cx, x[1] - cy);
    g[0] = (x[0] - cx) / r;
    g[1] = (x[1] - cy) / r;
  };
  f.max_value = std::sqrt(0.5);
  return f;
}

TEST(LevelSet, TwoPointLevelSet) {
  const auto e = level_set_area_mc(sine_1d(), 0.5, 0.02, 200000, 4);
  EXPECT_NEAR(e.area.value, 2.0, 0.2);
  EXPECT_FALSE(e.degenerate);
}

TEST(LevelSet, CirclePerimeter) {
  const auto f = circle_distance(0.5, 0.5);
  const auto e = level_set_area_mc(f, 0.3, default_band(f), 200000, 5);
  EXPECT_NEAR(e.area.value / (2 * kPi * 0.3), 1.0, 0.05);
  EXPECT_TRUE(e.band_consistent);
  // The volume estimate of {f <= 0.3} is the disk area.
  EXPECT_LT(std::abs(e.volume.value - kPi * 0.09), 4 * e.volume.se);
}

TEST(LevelSet, AboveMaximumIsEmpty) {
  const auto e = level_set_area_mc(sine_1d(), 1.5, 0.02, 1000, 6);
  EXPECT_EQ(e.area.value, 0.0);
  EXPECT_TRUE(e.empty_band);
  EXPECT_TRUE(e.degenerate);
}

TEST(LevelSet, SweepMatchesSingleCalls) {
  const auto f = circle_distance(0.4, 0.55);
  const std::vector<double> lambdas{0.1, 0.2, 0.3};
  const auto sweep = level_set_sweep_mc(f, lambdas, 0.01, 30000, 8);
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const auto single = level_set_area_mc(f, lambdas[i], 0.01, 30000, 8);
    EXPECT_EQ(sweep[i].area.value, single.area.value);
    EXPECT_EQ(sweep[i].volume.value, single.volume.value);
  }
  const std::vector<double> bad{0.2, 0.1};
  EXPECT_THROW(level_set_sweep_mc(f, bad, 0.01, 1000, 8), PreconditionError);
}

TEST(LevelSet, GradientCheck) {
  EXPECT_LT(gradient_check(circle_distance(0.5, 0.5), 1000, 3), 1e-4);
  EXPECT_LT(gradient_check(sine_1d(), 1000, 3), 1e-4);
}

TEST(Grid, IndexingWraps) {
  TorusGrid g(3, 5);
  const int c[] = {4, 0, 2};
  const std::size_t i = g.index(c);
  EXPECT_EQ(i, 4u * 25 + 2);
  const int w[] = {-1, 5, 7};
  EXPECT_EQ(g.index(w), i);
  EXPECT_EQ(g.coord(g.neighbor(i, 0, 1), 0), 0);
  EXPECT_EQ(g.coord(g.neighbor(i, 1, -1), 1), 4);
  const double x[] = {0.99, 1.01, -0.55};
  int out[3];
  g.coords(g.cell_of(x), out);
  EXPECT_EQ(out[0], 4);
  EXPECT_EQ(out[1], 0);
  EXPECT_EQ(out[2], 2);
}

TEST(GridComponents, EmptySeparatorWindsEverywhere) {
  for (int n = 1; n <= 3; ++n) {
    const TorusGrid g(n, 6);
    const auto c = grid_components(g, true);
    ASSERT_EQ(c.info.size(), 1u);
    EXPECT_EQ(c.info[0].winding, (1u << n) - 1);
    EXPECT_FALSE(c.separated(6));
    // Without wrap the box is one non-winding component.
    EXPECT_EQ(grid_components(g, false).info[0].winding, 0u);
  }
}

TEST(GridComponents, FullSeparatorHasNoComponents) {
  EXPECT_TRUE(grid_components(TorusGrid(2, 8, 1), true).info.empty());
}

TorusGrid lattice_lines(int res, int period) {
  TorusGrid g(2, res);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.coord(i, 0) % period == 0 || g.coord(i, 1) % period == 0) g[i] = 1;
  return g;
}

TEST(GridComponents, LatticeLinesGiveOpenCells) {
  const auto c = grid_components(lattice_lines(64, 16), true);
  ASSERT_EQ(c.info.size(), 16u);
  for (const auto& info : c.info) {
    EXPECT_EQ(info.cells, 225u);
    EXPECT_EQ(info.extent, 15);
    EXPECT_EQ(info.winding, 0u);
  }
  EXPECT_TRUE(c.separated(64));
}

TEST(GridComponents, SingleWallWindsOneAxis) {
  TorusGrid g(2, 16);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.coord(i, 0) == 3) g[i] = 1;
  const auto c = grid_components(g, true);
  ASSERT_EQ(c.info.size(), 1u);
  EXPECT_EQ(c.info[0].winding, 2u);  // wraps along axis 1 only
  EXPECT_EQ(c.info[0].extent, 16);
}

TEST(GridComponents, TranslationInvariance) {
  Rng rng(12);
  TorusGrid g(3, 12);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = rng.uniform() < 0.45 ? 1 : 0;
  TorusGrid shifted(3, 12);
  int c[3];
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.coords(i, c);
    c[0] += 5;
    c[2] += 7;
    shifted[shifted.index(c)] = g[i];
  }
  const auto a = grid_components(g, true), b = grid_components(shifted, true);
  ASSERT_EQ(a.info.size(), b.info.size());
  std::map<std::int32_t, std::int32_t> ab;
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.coords(i, c);
    c[0] += 5;
    c[2] += 7;
    const auto la = a.labels[i], lb = b.labels[shifted.index(c)];
    ASSERT_EQ(la < 0, lb < 0);
    if (la < 0) continue;
    auto [it, inserted] = ab.try_emplace(la, lb);
    ASSERT_EQ(it->second, lb);
  }
  for (const auto& [la, lb] : ab) {
    EXPECT_EQ(a.info[static_cast<std::size_t>(la)].cells, b.info[static_cast<std::size_t>(lb)].cells);
    EXPECT_EQ(a.info[static_cast<std::size_t>(la)].winding, b.info[static_cast<std::size_t>(lb)].winding);
  }
}

TEST(GridComponents, RegionsAndDilation) {
  TorusGrid g(2, 8, -1);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g.coord(i, 0) < 4) g[i] = 3;
  const auto regions = region_components(g, true);
  ASSERT_EQ(regions.info.size(), 1u);
  EXPECT_EQ(regions.info[0].value, 3);
  EXPECT_EQ(region_components(g, true, true).info.size(), 2u);

  TorusGrid dot(2, 8);
  dot[dot.index(std::vector<int>{0, 0})] = 1;
  std::size_t grown = 0;
  const TorusGrid grown_grid = dilate(dot, 1);
  for (auto v : grown_grid.cells()) grown += v != 0;
  EXPECT_EQ(grown, 5u);
  EXPECT_EQ(interface_facets(dot), 4u);
  // Six rows off the lines per axis, four label changes per row.
  EXPECT_EQ(interface_facets(lattice_lines(8, 4)), 48u);
}

TEST(Clip, InsideOutsideAndOctant) {
  const auto s = cli::icosphere(0.3, 3, {0.5, 0.5, 0.5});
  Box3 unit;
  unit.extend({0, 0, 0});
  unit.extend({1, 1, 1});
  EXPECT_NEAR(mesh_area(clip_mesh_to_cube(s, unit)), mesh_area(s), 1e-15);
  Box3 far;
  far.extend({5, 5, 5});
  far.extend({6, 6, 6});
  EXPECT_TRUE(clip_mesh_to_cube(s, far).empty());
  const auto ball = cli::icosphere(1.0, 5, {0, 0, 0});
  const auto octant = clip_mesh_to_cube(ball, unit);
  EXPECT_NEAR(mesh_area(octant) / (0.5 * kPi), 1.0, 0.01);
  for (const auto& v : octant.vertices)
    for (int k = 0; k < 3; ++k) {
      EXPECT_GE(v[k], 0.0);
      EXPECT_LE(v[k], 1.0);
    }
}

TEST(Clip, LatticePartitionIsAdditiveAndWatertight) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    const auto mesh = cli::perturbed_sphere(1.3, 3, 0.25, seed);
    const Vec3 origin{rng.uniform(), rng.uniform(), rng.uniform()};
    const auto split = split_by_lattice(mesh, origin, 0.7);
    const double total = mesh_area(mesh);
    EXPECT_NEAR(mesh_area(split.mesh), total, 1e-9 * total);
    EXPECT_TRUE(is_closed(split.mesh));
    EXPECT_EQ(euler_characteristic(split.mesh), 2);
    std::map<std::array<int, 3>, int> cells;
    for (const auto& c : split.cell) ++cells[c];
    double sum = 0.0;
    for (const auto& [cell, n] : cells) {
      const auto piece = extract_cell(split, cell);
      sum += mesh_area(piece);
      Box3 box;
      for (int k = 0; k < 3; ++k) {
        box.lo[k] = origin[k] + cell[static_cast<std::size_t>(k)] * 0.7;
        box.hi[k] = box.lo[k] + 0.7;
      }
      EXPECT_NEAR(mesh_area(clip_mesh_to_cube(mesh, box)), mesh_area(piece), 1e-12);
    }
    EXPECT_NEAR(sum, total, 1e-9 * total);
  }
}

TEST(MeshIo, RoundTripIsExact) {
  const auto mesh = cli::perturbed_sphere(0.77, 2, 0.2, 3);
  std::stringstream ss;
  write_mesh(ss, mesh);
  const auto back = read_mesh(ss);
  EXPECT_EQ(back.vertices, mesh.vertices);
  EXPECT_EQ(back.triangles, mesh.triangles);
  std::stringstream commented("# header\nmesh 3 1\n0 0 0\n# mid\n1 0 0\n0 1 0\n\n0 1 2\n");
  EXPECT_EQ(read_mesh(commented).size(), 1u);
  std::stringstream broken("mesh 3 1\n0 0 0\n1 0 0\n0 1 0\n0 1 7\n");
  EXPECT_THROW(read_mesh(broken), IoError);
}

TEST(GridIo, RoundTripIsExact) {
  TorusGrid g(3, 7, -1);
  Rng rng(4);
  for (auto& v : g.cells()) v = static_cast<std::int32_t>(rng.below(4)) - 1;
  std::stringstream ss;
  write_grid(ss, g);
  EXPECT_EQ(read_grid(ss), g);
  std::stringstream short_grid("grid 2 3\n4 0\n");
  EXPECT_THROW(read_grid(short_grid), IoError);
}

}  // namespace
}  // namespace sepwidth::geom
