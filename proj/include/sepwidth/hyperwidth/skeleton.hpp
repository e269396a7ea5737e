#pragma once

#include <array>
#include <cstddef>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::hyperwidth {

/// T = (Y∩X) ∪ (Z∩X) ∪ (Z∩Y) for the plane families X = {x = k + t_x},
/// Y = {y = k + t_y}, Z = {z = k + t_z} in lattice units. Lattice point u
/// corresponds to origin + l u.
struct DualSkeletonT {
  Vec3 t{0.5, 0.5, 0.5};
  double l = 1.0;
  Vec3 origin;
  int sweep_res = 0;                 // samples per sweep actually used
  int refinements = 0;
  double x_length = 0.0;             // length of X ∩ M, lattice units
  double y_length = 0.0;
  std::size_t xy_hits = 0;           // lines X∩Y against M, from the sweep
  // Independent recount: lines X∩Y, Z∩X, Z∩Y through the bounding box.
  std::array<std::size_t, 3> pair_hits{};
  std::size_t lines_checked = 0;

  Vec3 to_lattice(const Vec3& x) const { return (x - origin) * (1.0 / l); }
  Vec3 from_lattice(const Vec3& u) const { return origin + l * u; }
  bool disjoint() const { return pair_hits[0] == 0 && pair_hits[1] == 0 && pair_hits[2] == 0; }
};

/// Chooses t_x with |X∩M| < 1/3, then t_y with |Y∩M| < 2/3 and no point in
/// X∩Y∩M, then t_z missing both X∩Z and Y∩Z. Samples (j + 0.618...)/res; each
/// failed step doubles the resolution (4 times, then SearchExhausted).
/// Requires area(M) < l²/3.
DualSkeletonT three_plane_T(const geom::TriMesh& mesh, int sweep_res, double l = 1.0,
                            const Vec3& origin = {});

/// Hit counts of the three line families of T with M (X∩Y, X∩Z, Y∩Z), by
/// segment-mesh intersection over the lines crossing the bounding box.
std::array<std::size_t, 3> skeleton_hits(const DualSkeletonT& T, const geom::TriMesh& mesh,
                                         std::size_t* lines = nullptr);

struct Retraction {
  Vec3 point;                        // on the lattice 1-skeleton
  std::array<int, 3> cube{};         // closed cube containing x and point
  int jitters = 0;
};

/// Radial projection from the cube's T-vertex to its boundary, then within
/// the landing facet from the facet's T-point to the facet boundary. x at a
/// T-vertex is jittered by 1e-9 l (5 times); x elsewhere on T is a
/// precondition error.
Retraction retraction_phi(const DualSkeletonT& T, const Vec3& x);

/// Whether x lies in the closed lattice cube, with tolerance in lattice units.
bool in_closed_cube(const DualSkeletonT& T, const std::array<int, 3>& cube, const Vec3& x,
                    double tol = 1e-9);

/// Whether x lies on the lattice 1-skeleton (two coordinates integral).
bool on_one_skeleton(const DualSkeletonT& T, const Vec3& x, double tol = 1e-9);

}  // namespace sepwidth::hyperwidth
