#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <map>
#include <set>

#include "sepwidth/cli/generators.hpp"
#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/geom/clip.hpp"
#include "sepwidth/geom/intersect.hpp"
#include "sepwidth/hyperwidth/crosses.hpp"
#include "sepwidth/hyperwidth/decompose.hpp"
#include "sepwidth/hyperwidth/essential.hpp"
#include "sepwidth/hyperwidth/skeleton.hpp"
#include "sepwidth/hyperwidth/width.hpp"

namespace sepwidth::hyperwidth {
namespace {

constexpr double kPi = std::numbers::pi;
using geom::TriMesh;

bool same(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

TriMesh with_area(const TriMesh& m, double area) {
  return geom::scaled(m, std::sqrt(area / geom::mesh_area(m)));
}

// Torus with a seeded random orientation, major/minor ratio in [4, 20).
TriMesh random_torus(std::uint64_t seed) {
  Rng rng(seed);
  const double ratio = rng.uniform(4.0, 20.0);
  TriMesh t = cli::torus(1.0, 1.0 / ratio, 96, 12);
  const Vec3 axis = normalized(Vec3{rng.normal(), rng.normal(), rng.normal()});
  const double angle = rng.uniform(0.0, kPi);
  const double c = std::cos(angle), s = std::sin(angle);
  return geom::transformed(t, [&](const Vec3& p) {
    return p * c + cross(axis, p) * s + axis * (dot(axis, p) * (1.0 - c));
  });
}

// -- decompose / good_component ---------------------------------------------

TEST(Decompose, SmallSphereInOneCube) {
  const double r = 0.15;
  const auto m = cli::icosphere(r, 3, {0.5, 0.5, 0.5});
  const auto dec = decompose(m, 1.0, 48, 1);
  ASSERT_EQ(dec.cubes.size(), 1u);
  const auto& c = dec.cubes[0];
  EXPECT_EQ(c.index, (std::array<int, 3>{0, 0, 0}));
  ASSERT_EQ(c.pieces.size(), 1u);
  EXPECT_EQ(c.components, 2);
  // Enclosed volume of the polyhedron, by the divergence theorem.
  double exact = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto t = m.triangle(i);
    exact += dot(t.a, cross(t.b, t.c)) / 6.0;
  }
  EXPECT_LE(std::abs(c.pieces[0].volume - exact), c.pieces[0].straddle_volume);
  EXPECT_NEAR(c.pieces[0].area, geom::mesh_area(m), 1e-12);
  for (double f : c.pieces[0].facet_area) EXPECT_EQ(f, 0.0);
}

TEST(Decompose, EmptyMeshIsTrivial) {
  const auto dec = decompose(TriMesh{}, 1.0, 8, 1);
  ASSERT_EQ(dec.cubes.size(), 1u);
  EXPECT_TRUE(dec.cubes[0].pieces.empty());
  EXPECT_EQ(dec.cubes[0].components, 1);
  const auto g = good_component(dec.cubes[0]);
  for (double f : g.facet_fraction) EXPECT_EQ(f, 1.0);
  EXPECT_EQ(g.u_components, 1);
}

TEST(Decompose, RejectsOpenMesh) {
  TriMesh m;
  m.vertices = {{0.1, 0.1, 0.1}, {0.9, 0.1, 0.1}, {0.1, 0.9, 0.1}};
  m.triangles = {{0, 1, 2}};
  EXPECT_THROW(decompose(m, 1.0, 8, 1), PreconditionError);
}

TEST(Decompose, ScaledTorusAreasAddUp) {
  const auto m = with_area(cli::torus(1.0, 0.35, 48, 24), 1.0 / 3.0 - 1e-3);
  const auto dec = decompose(m, 1.0, 32, 2);
  EXPECT_GT(dec.cubes.size(), 1u);
  double total = 0.0;
  for (const auto& c : dec.cubes) {
    EXPECT_LT(c.area, 1.0 / 3.0);
    double pieces = 0.0;
    for (const auto& p : c.pieces) {
      pieces += p.area;
      EXPECT_LE(p.volume, 0.5);
    }
    EXPECT_NEAR(pieces, c.area, 1e-9 * c.area);
    total += c.area;
  }
  EXPECT_NEAR(total, geom::mesh_area(m), 1e-9 * total);
}

TEST(Decompose, TriangleBoxTestAgreesWithClipping) {
  Rng rng(5);
  int overlaps = 0;
  for (int i = 0; i < 2000; ++i) {
    geom::Triangle t{{rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(-1, 2)},
                     {rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(-1, 2)},
                     {rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(-1, 2)}};
    TriMesh m;
    m.vertices = {t.a, t.b, t.c};
    m.triangles = {{0, 1, 2}};
    Box3 box;
    box.lo = {0.3, 0.2, 0.4};
    box.hi = {0.8, 0.7, 0.9};
    const double clipped = geom::mesh_area(geom::clip_mesh_to_cube(m, box));
    const bool sat = triangle_box_overlap(t, box);
    if (clipped > 1e-9) EXPECT_TRUE(sat);
    if (!sat) EXPECT_EQ(clipped, 0.0);
    overlaps += sat;
  }
  EXPECT_GT(overlaps, 100);
}

TEST(GoodComponent, SphereKeepsTheOutside) {
  const auto m = cli::icosphere(0.15, 3, {0.5, 0.5, 0.5});
  const auto dec = decompose(m, 1.0, 32, 1);
  const auto& c = dec.cubes[0];
  const auto g = good_component(c);
  for (double f : g.facet_fraction) EXPECT_EQ(f, 1.0);
  EXPECT_EQ(g.u_components, 1);
  const int mid = c.res / 2;
  EXPECT_EQ(g.in_u[c.voxel(mid, mid, mid)], 0);
  EXPECT_EQ(g.in_u[c.voxel(0, 0, 0)], 1);
  ASSERT_EQ(g.isoperimetric.size(), 1u);
  EXPECT_TRUE(g.isoperimetric_ok);
}

TEST(GoodComponent, AreaAtLeastAThirdIsAPrecondition) {
  const auto m = cli::icosphere(0.2, 3, {0.5, 0.5, 0.5});  // area about 0.5
  const auto dec = decompose(m, 1.0, 16, 1);
  EXPECT_THROW(good_component(dec.cubes[0]), PreconditionError);
}

TEST(GoodComponent, PropertyOverSeededMeshes) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    TriMesh m = seed % 2 == 0 ? cli::perturbed_sphere(1.0, 3, 0.3, seed) : random_torus(seed);
    m = with_area(m, 1.0 / 3.0 - 1e-3);
    m = geom::translated(m, {0.5, 0.5, 0.5});
    const auto dec = decompose(m, 1.0, 32, seed);
    for (const auto& c : dec.cubes) {
      GoodComponent g;
      ASSERT_NO_THROW(g = good_component(c)) << "seed " << seed;
      EXPECT_GT(g.min_facet_fraction, 0.5);
      for (const auto& iso : g.isoperimetric) {
        EXPECT_TRUE(iso.ok);
        EXPECT_GE(iso.area, 4.0 * iso.volume * (1.0 - iso.volume) * (1.0 - iso.delta) - 1e-12);
      }
    }
  }
}

// -- crosses ------------------------------------------------------------------

void expect_valid_crosses(const CrossSet& set, const TriMesh& mesh, const CubeDecomposition& dec) {
  for (const auto& cross : set.crosses) {
    std::set<std::array<int, 3>> used;
    for (int f = 0; f < kFacets; ++f) {
      const auto& vox = cross.voxels[static_cast<std::size_t>(f)];
      for (std::size_t i = 1; i < vox.size(); ++i) EXPECT_TRUE(used.insert(vox[i]).second);
      const auto& path = cross.paths[static_cast<std::size_t>(f)];
      ASSERT_GE(path.size(), 2u);
      EXPECT_TRUE(same(path.front(), cross.center));
      EXPECT_TRUE(same(path.back(), cross.endpoints[static_cast<std::size_t>(f)]));
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const auto hits = geom::segment_mesh_hits(geom::Segment{path[i], path[i + 1]}, mesh);
        EXPECT_EQ(hits.count(), 0u);
        EXPECT_FALSE(hits.degenerate);
      }
      // The endpoint is interior to its facet.
      const int a = f / 2;
      const Vec3 lo = dec.origin + dec.side * Vec3{static_cast<double>(cross.cube[0]), static_cast<double>(cross.cube[1]),
                                                   static_cast<double>(cross.cube[2])};
      const Vec3& e = cross.endpoints[static_cast<std::size_t>(f)];
      EXPECT_NEAR(e[a], lo[a] + (f % 2) * dec.side, 1e-12);
      for (int b : {(a + 1) % 3, (a + 2) % 3}) {
        EXPECT_GT(e[b], lo[b]);
        EXPECT_LT(e[b], lo[b] + dec.side);
      }
    }
    // Clearance: no path voxel meets M or touches a voxel that does.
    const CubeData* c = dec.find(cross.cube);
    if (!c || cross.trivial || set.voxel_res != dec.voxel_res) continue;
    for (const auto& vox : cross.voxels)
      for (const auto& v : vox) {
        EXPECT_EQ(c->straddle[c->voxel(v[0], v[1], v[2])], 0);
        for (int a = 0; a < 3; ++a)
          for (int d : {-1, 1}) {
            auto w = v;
            w[static_cast<std::size_t>(a)] += d;
            if (w[static_cast<std::size_t>(a)] < 0 || w[static_cast<std::size_t>(a)] >= c->res) continue;
            EXPECT_EQ(c->straddle[c->voxel(w[0], w[1], w[2])], 0);
          }
      }
  }
}

TEST(Crosses, EmptyMeshGivesTheDualSkeleton) {
  const auto dec = decompose(TriMesh{}, 1.0, 8, 1);
  const auto set = build_crosses(dec);
  ASSERT_EQ(set.crosses.size(), 7u);
  for (const auto& cross : set.crosses) {
    EXPECT_TRUE(cross.trivial);
    const Vec3 lo{static_cast<double>(cross.cube[0]), static_cast<double>(cross.cube[1]),
                  static_cast<double>(cross.cube[2])};
    EXPECT_TRUE(same(cross.center, lo + Vec3{0.5, 0.5, 0.5}));
    for (int f = 0; f < kFacets; ++f) {
      Vec3 expect = lo + Vec3{0.5, 0.5, 0.5};
      expect[f / 2] = lo[f / 2] + (f % 2);
      EXPECT_TRUE(same(cross.endpoints[static_cast<std::size_t>(f)], expect));
      EXPECT_EQ(cross.paths[static_cast<std::size_t>(f)].size(), 2u);
    }
  }
  expect_valid_crosses(set, TriMesh{}, dec);
}

TEST(Crosses, OneCubeSphere) {
  const auto m = cli::icosphere(0.15, 3, {0.5, 0.5, 0.5});
  const auto dec = decompose(m, 1.0, 32, 1);
  const auto set = build_crosses(dec);
  const Cross* c = set.find({0, 0, 0});
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->trivial);
  // The center is outside the sphere.
  EXPECT_GT(norm(c->center - Vec3{0.5, 0.5, 0.5}), 0.15);
  expect_valid_crosses(set, m, dec);
}

TEST(Crosses, SharedFacetEndpointsAgree) {
  const auto m = with_area(cli::torus(1.0, 0.35, 48, 24), 1.0 / 3.0 - 1e-3);
  const auto dec = decompose(m, 1.0, 32, 2);
  const auto set = build_crosses(dec);
  int shared = 0;
  for (const auto& cross : set.crosses)
    for (int a = 0; a < 3; ++a) {
      auto k = cross.cube;
      ++k[static_cast<std::size_t>(a)];
      const Cross* other = set.find(k);
      if (!other) continue;
      EXPECT_TRUE(same(cross.endpoints[static_cast<std::size_t>(2 * a + 1)], other->endpoints[static_cast<std::size_t>(2 * a)]));
      ++shared;
    }
  EXPECT_GT(shared, 12);
  expect_valid_crosses(set, m, dec);
}

TEST(Crosses, CoarseGridRefines) {
  // At 4 voxels per side the sphere leaves no clear voxel; one doubling fixes it.
  const auto m = cli::icosphere(0.15, 3, {0.5, 0.5, 0.5});
  const auto dec = decompose(m, 1.0, 4, 1);
  const auto set = build_crosses(dec);
  EXPECT_EQ(set.refinements, 1);
  EXPECT_EQ(set.voxel_res, 8);
  expect_valid_crosses(set, m, dec);
}

// -- three_plane_T / retraction -----------------------------------------------

// Independent recount through the plain mesh overload, lines spaced over a
// padded box.
std::array<std::size_t, 3> brute_hits(const DualSkeletonT& T, const TriMesh& m) {
  std::array<std::size_t, 3> out{};
  Box3 box;
  for (const auto& v : m.vertices) box.extend(T.to_lattice(v));
  const int along[3] = {2, 1, 0};
  for (int f = 0; f < 3; ++f) {
    const int a = along[f], b = (a + 1) % 3, c = (a + 2) % 3;
    for (int i = static_cast<int>(std::floor(box.lo[b])) - 1; i <= static_cast<int>(std::ceil(box.hi[b])); ++i)
      for (int j = static_cast<int>(std::floor(box.lo[c])) - 1; j <= static_cast<int>(std::ceil(box.hi[c])); ++j) {
        Vec3 p, q;
        p[b] = q[b] = i + T.t[b];
        p[c] = q[c] = j + T.t[c];
        p[a] = box.lo[a] - 2.0;
        q[a] = box.hi[a] + 2.0;
        const auto h = geom::segment_mesh_hits(geom::Segment{T.from_lattice(p), T.from_lattice(q)}, m);
        out[static_cast<std::size_t>(f)] += h.count() + h.degenerate;
      }
  }
  return out;
}

// Length of X ∩ M from triangle-triangle intersection with large triangles
// covering the planes x = k + t.
double plane_section_length(const TriMesh& m, int axis, double t) {
  const Box3 box = m.bounds();
  double total = 0.0;
  for (int k = static_cast<int>(std::floor(box.lo[axis])) - 1; k <= static_cast<int>(std::ceil(box.hi[axis])); ++k) {
    const int b = (axis + 1) % 3, c = (axis + 2) % 3;
    Vec3 p0, p1, p2;
    p0[axis] = p1[axis] = p2[axis] = k + t;
    p0[b] = -100;
    p0[c] = -100;
    p1[b] = 300;
    p1[c] = -100;
    p2[b] = -100;
    p2[c] = 300;
    const geom::Triangle big{p0, p1, p2};
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto r = geom::tri_tri_intersection(m.triangle(i), big);
      if (r.kind == geom::TriTriKind::kSegment) total += norm(r.q - r.p);
    }
  }
  return total;
}

TEST(ThreePlane, TinySphere) {
  const auto m = with_area(cli::icosphere(1.0, 3), 0.1);
  const auto T = three_plane_T(m, 32);
  EXPECT_TRUE(T.disjoint());
  EXPECT_EQ(brute_hits(T, m), (std::array<std::size_t, 3>{0, 0, 0}));
  for (int a = 0; a < 3; ++a) {
    EXPECT_GT(T.t[a], 0.0);
    EXPECT_LT(T.t[a], 1.0);
  }
}

TEST(ThreePlane, Preconditions) {
  const auto m = with_area(cli::icosphere(1.0, 3), 0.34);
  EXPECT_THROW(three_plane_T(m, 32), PreconditionError);
  const auto T = three_plane_T(TriMesh{}, 8);
  EXPECT_TRUE(T.disjoint());
  EXPECT_EQ(T.lines_checked, 0u);
}

TEST(ThreePlane, ThinTorusCrossesThePlanes) {
  // Long thin tube: the planes must cut it, yet the lines avoid it.
  const auto m = with_area(cli::torus(2.0, 0.01, 400, 6), 0.3);
  const auto T = three_plane_T(m, 64);
  EXPECT_GT(T.x_length, 0.0);
  EXPECT_LT(T.x_length, 1.0 / 3.0);
  EXPECT_LT(T.y_length, 2.0 / 3.0);
  EXPECT_NEAR(T.x_length, plane_section_length(m, 0, T.t.x), 1e-9);
  EXPECT_NEAR(T.y_length, plane_section_length(m, 1, T.t.y), 1e-9);
  EXPECT_EQ(T.xy_hits, 0u);
  EXPECT_TRUE(T.disjoint());
  EXPECT_GT(T.lines_checked, 3u);
  EXPECT_EQ(brute_hits(T, m), (std::array<std::size_t, 3>{0, 0, 0}));
}

TEST(Retraction, HandComputedPoint) {
  DualSkeletonT T;
  T.t = {0.5, 0.5, 0.5};
  const auto r = retraction_phi(T, {0.75, 0.5, 0.6});
  EXPECT_NEAR(r.point.x, 1.0, 1e-15);
  EXPECT_NEAR(r.point.y, 0.5, 1e-15);
  EXPECT_NEAR(r.point.z, 1.0, 1e-15);
  EXPECT_EQ(r.cube, (std::array<int, 3>{0, 0, 0}));
}

TEST(Retraction, FixesTheOneSkeleton) {
  DualSkeletonT T;
  T.t = {0.3, 0.6, 0.45};
  T.l = 2.0;
  T.origin = {0.1, -0.2, 0.05};
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    Vec3 u{std::floor(rng.uniform(-3, 3)), std::floor(rng.uniform(-3, 3)), std::floor(rng.uniform(-3, 3))};
    u[static_cast<int>(rng.below(3))] += rng.uniform(0.01, 0.99);
    const Vec3 x = T.from_lattice(u);
    const auto r = retraction_phi(T, x);
    EXPECT_LT(linf(r.point - x), 1e-12);
  }
}

TEST(Retraction, SamplesStayInTheirCubeAndAreIdempotent) {
  DualSkeletonT T;
  T.t = {0.3, 0.6, 0.45};
  T.l = 1.5;
  Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    const Vec3 x{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const auto r = retraction_phi(T, x);
    EXPECT_TRUE(in_closed_cube(T, r.cube, x));
    EXPECT_TRUE(in_closed_cube(T, r.cube, r.point));
    EXPECT_TRUE(on_one_skeleton(T, r.point));
    EXPECT_LE(linf(r.point - x), T.l);
    EXPECT_LT(linf(retraction_phi(T, r.point).point - r.point), 1e-12);
  }
}

TEST(Retraction, DegenerateCenterIsJittered) {
  DualSkeletonT T;
  const auto r = retraction_phi(T, {0.5, 0.5, 0.5});
  EXPECT_GE(r.jitters, 1);
  EXPECT_TRUE(on_one_skeleton(T, r.point));
  EXPECT_TRUE(in_closed_cube(T, {0, 0, 0}, r.point));
  // Elsewhere on T is a precondition error.
  EXPECT_THROW(retraction_phi(T, {0.5, 0.5, 0.8}), PreconditionError);
}

// -- width certificate --------------------------------------------------------

TEST(WidthCodim1, UnitIcosphere) {
  const auto m = cli::icosphere(1.0, 4);
  const auto r = width_certificate_codim1(m, 32, 64, 1, 2000);
  EXPECT_NEAR(r.l, std::sqrt(3.0 * geom::mesh_area(m)) * (1.0 + kLatticeMargin), 1e-12);
  EXPECT_NEAR(r.l, std::sqrt(3.0 * 4.0 * kPi), 0.05);
  EXPECT_TRUE(r.T.disjoint());
  EXPECT_EQ(r.same_cube_failures, 0u);
  EXPECT_LE(r.certificate.sup_displacement, r.l);
  EXPECT_TRUE(r.certificate.valid());
  EXPECT_EQ(r.certificate.sample_map.size(), m.vertices.size() + 2000);
  ASSERT_TRUE(r.decomposition.has_value());
  EXPECT_GT(r.decomposition->min_facet_fraction, 0.5);
  EXPECT_LT(r.decomposition->max_cube_area, 1.0 / 3.0);
}

TEST(WidthCodim1, ScalesHomogeneously) {
  const auto m = cli::torus(1.0, 0.3, 32, 16);
  const auto a = width_certificate_codim1(m, 0, 32, 3, 500);
  const auto b = width_certificate_codim1(geom::scaled(m, 2.5), 0, 32, 3, 500);
  EXPECT_NEAR(b.l / a.l, 2.5, 1e-12);
  EXPECT_TRUE(a.certificate.valid());
  EXPECT_TRUE(b.certificate.valid());
}

TEST(WidthCodim1, ThinTorusAndErrors) {
  const auto m = cli::torus(10.0, 0.05, 400, 8);
  const auto r = width_certificate_codim1(m, 0, 64, 5, 2000);
  EXPECT_GT(r.T.x_length, 0.0);
  EXPECT_TRUE(r.T.disjoint());
  EXPECT_EQ(r.same_cube_failures, 0u);
  EXPECT_TRUE(r.certificate.valid());
  EXPECT_THROW(width_certificate_codim1(TriMesh{}, 0, 8, 1), PreconditionError);
}

// -- essential curve ----------------------------------------------------------

void expect_certificate(const EssentialResult& r) {
  ASSERT_TRUE(r.certificate.has_value());
  const auto& c = *r.certificate;
  EXPECT_TRUE(c.rank_verified);
  EXPECT_FALSE(z2_is_boundary(r.refined, c.edges));
  for (const auto& p : c.cycle)
    for (int a = 0; a < 3; ++a) {
      EXPECT_GE(p[a], c.cube.lo[a] - 1e-12);
      EXPECT_LE(p[a], c.cube.hi[a] + 1e-12);
    }
  // The edges form one closed path through the listed vertices.
  ASSERT_EQ(c.edges.size(), c.cycle.size());
  std::map<int, int> degree;
  for (const auto& [a, b] : c.edges) {
    ++degree[a];
    ++degree[b];
  }
  for (const auto& [v, d] : degree) EXPECT_EQ(d, 2);
  EXPECT_TRUE(std::any_of(c.pairing.begin(), c.pairing.end(), [](std::uint8_t b) { return b != 0; }));
}

TEST(Essential, BettiNumbers) {
  EXPECT_EQ(z2_betti1(cli::icosphere(1.0, 2)), 0);
  const auto t = cli::torus(1.0, 0.3, 24, 12);
  EXPECT_EQ(z2_betti1(t), 2);
  EXPECT_EQ(z2_betti1(geom::merged({t, geom::translated(t, {5, 0, 0})})), 4);
}

TEST(Essential, BoundaryRankCheck) {
  const auto t = cli::torus(1.0, 0.3, 24, 12);
  // Boundaries of face sets are boundaries.
  Rng rng(3);
  std::vector<std::pair<int, int>> z;
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (rng.uniform() < 0.5) continue;
    for (int k = 0; k < 3; ++k) z.push_back({t.triangles[f][static_cast<std::size_t>(k)], t.triangles[f][static_cast<std::size_t>((k + 1) % 3)]});
  }
  EXPECT_TRUE(z2_is_boundary(t, z));
  EXPECT_TRUE(z2_is_boundary(t, {}));
}

TEST(Essential, CubeContainingTheTorus) {
  const auto t = cli::torus(1.0, 0.3, 32, 16);
  const Box3 b = t.bounds();
  const double diam = linf(b.hi - b.lo);
  const auto r = essential_curve_in_cube(t, diam + 1e-3, 1);
  EXPECT_EQ(r.betti1, 2);
  EXPECT_EQ(r.euler, 0);
  expect_certificate(r);
}

TEST(Essential, MeridianFitsButNotBelowTheTube) {
  const auto t = cli::torus(1.0, 0.3, 48, 24);
  expect_certificate(essential_curve_in_cube(t, 0.7, 2));
  const auto none = essential_curve_in_cube(t, 0.2, 2);
  EXPECT_FALSE(none.certificate.has_value());
  EXPECT_GT(none.cubes_scanned, 100u);
}

TEST(Essential, ScaledTorusAndSphere) {
  const auto t = with_area(cli::torus(1.0, 0.35, 48, 24), 1.0 / 3.0 - 1e-3);
  expect_certificate(essential_curve_in_cube(t, 4.0 * std::sqrt(3.0 * geom::mesh_area(t)), 1));
  EXPECT_THROW(essential_curve_in_cube(cli::icosphere(1.0, 2), 1.0, 1), PreconditionError);
}

}  // namespace
}  // namespace sepwidth::hyperwidth
