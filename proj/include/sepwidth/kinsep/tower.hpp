#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/foam/union_process.hpp"
#include "sepwidth/geom/grid.hpp"
#include "sepwidth/geom/mesh.hpp"
#include "sepwidth/kinsep/pose.hpp"

namespace sepwidth::kinsep {

/// A unit square of a grid plane: normal `axis`, plane coordinate
/// plane * h (+ offset), spanning cells u, v along axes (axis+1)%3 and
/// (axis+2)%3.
struct Facet {
  int axis = 0;
  long plane = 0;
  long u = 0, v = 0;
};

/// Interface facets of an N = 3 label grid (cells of different value).
std::vector<Facet> label_facets(const geom::TorusGrid& grid);

/// The cuberille surface of a 3D label grid posed by y -> s(y) + x. In posed
/// space, facets sit on the grid h Z^3 + x; `frac` holds x / h - floor(x / h)
/// per axis.
class PosedFoam {
 public:
  PosedFoam(const geom::TorusGrid* grid, const Pose& pose);

  const geom::TorusGrid& grid() const { return *grid_; }
  const Pose& pose() const { return pose_; }
  int res() const { return res_; }
  double h() const { return h_; }
  double frac(int axis) const { return frac_[static_cast<std::size_t>(axis)]; }

  /// Whether the posed facet (posed integer indices, any range) exists.
  bool has_facet(const Facet& f) const;
  /// The posed image of a facet given in grid coordinates.
  Facet image(const Facet& f) const;
  /// Grid value of the posed cell with integer indices c (any range).
  std::int32_t cell_value(const std::array<long, 3>& c) const;
  /// Grid cell index of the posed cell c.
  std::size_t cell_index(const std::array<long, 3>& c) const;
  /// Posed cell containing y (cells are [c h + x, (c+1) h + x)).
  std::array<long, 3> cell_of(const Vec3& y) const;

  /// Plane coordinate and the extent of the square along its two in-plane axes.
  double plane_coord(const Facet& f) const;
  void extent(const Facet& f, int axis, double& lo, double& hi) const;

  /// Calls visit(f) for every posed facet meeting `box`.
  void facets_in_box(const Box3& box, const std::function<void(const Facet&)>& visit) const;

  /// Whether y lies within `tol` of the posed surface.
  bool contains(const Vec3& y, double tol) const;

  /// Two triangles per facet, as a mesh of the posed surface in [0,1)^3-ish
  /// coordinates.
  geom::TriMesh facet_mesh(const std::vector<Facet>& posed_facets) const;

 private:
  const geom::TorusGrid* grid_;
  Pose pose_;
  Pose inverse_;
  int res_;
  double h_;
  std::array<long, 3> shift_{};   // floor(x / h)
  std::array<double, 3> frac_{};  // x / h - shift, in [0, 1)
};

/// Segment along `axis` (level 1), p.axis < q.axis.
struct TowerSegment {
  int axis = 0;
  Vec3 p, q;
  double length() const { return q[axis] - p[axis]; }
};

struct TowerLevel {
  int m = 0;
  double measure = 0.0;             // per unit cell: area, length or count
  double calibrated = 0.0;          // level 0: raster area times the foam calibration
  double bound = 0.0;               // (2 pi)^(m+1) sqrt(N (N-1) ... (N-m))
  bool within_bound = false;
  std::size_t candidates = 0;       // pose candidates evaluated
  std::size_t degenerate_candidates = 0;
  double candidate_mean = 0.0;      // mean measure over the candidates
  double candidate_se = 0.0;
  std::size_t chosen = 0;           // index of the selected candidate
};

/// Intersections of m+1 posed copies of the foam surface; copy 0 is the foam
/// itself. Level 0 is the facet surface, level 1 its intersection segments
/// with copy 1, level 2 the points where those meet copy 2. All levels are
/// Z^3-periodic and stored for one fundamental domain.
struct SeparatorTower {
  geom::TorusGrid grid;
  double calibration = 1.0;
  std::vector<Pose> copies;
  std::vector<Facet> facets;
  std::vector<TowerSegment> segments;
  std::vector<Vec3> points;
  std::vector<TowerLevel> levels;
  bool bound_miss = false;

  int top() const { return static_cast<int>(copies.size()) - 1; }
  PosedFoam copy(int i) const { return PosedFoam(&grid, copies[static_cast<std::size_t>(i)]); }
};

/// (2 pi)^(m+1) sqrt(N!/(N-m-1)!) for N = 3.
double tower_bound(int m);

inline constexpr std::size_t kDefaultPoseSamples = 256;

/// Requires a separated N = 3 foam and 0 <= m <= 2. Per level, evaluates
/// pose_samples seeded candidate poses and keeps the one with the smallest
/// intersection measure.
SeparatorTower build_tower(const foam::FoamState& foam, int m, std::size_t pose_samples,
                           std::uint64_t seed);

/// Level 1 of copies a and b (b's facets looked up); returns the length and
/// appends segments when out != nullptr. Throws DegeneratePose when two
/// copies share a plane offset.
double intersect_surfaces(const PosedFoam& a, const std::vector<Facet>& a_facets,
                          const PosedFoam& b, std::vector<TowerSegment>* out);

/// Points where segments cross copy c's surface.
std::size_t intersect_segments(const std::vector<TowerSegment>& segments, const PosedFoam& c,
                               std::vector<Vec3>* out);

/// Measure of the periodic level j inside the unit cube [corner, corner+1).
double level_measure_in_cell(const SeparatorTower& tower, int level, const Vec3& corner);

/// Whether every element of level j (segment ends and midpoints, points) lies
/// within `tol` of each copy i <= j. `failures` counts the elements that do not.
bool check_containment(const SeparatorTower& tower, double tol, std::size_t* failures = nullptr);

}  // namespace sepwidth::kinsep
