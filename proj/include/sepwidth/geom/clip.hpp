#pragma once

#include <array>
#include <vector>

#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::geom {

/// Part of the mesh inside the closed box. Each triangle is clipped by the six
/// face half-spaces and the convex remainder fan-triangulated. New vertices
/// are shared between neighboring triangles.
TriMesh clip_mesh_to_cube(const TriMesh& mesh, const Box3& cube);

/// The mesh cut along every lattice plane x_k = origin_k + j * spacing.
struct LatticeSplit {
  TriMesh mesh;                                // refined mesh with shared vertices
  std::vector<std::array<int, 3>> cell;        // lattice cell of each triangle
  std::vector<int> parent;                     // source triangle
  double min_plane_distance = 0.0;             // closest original vertex to a plane
};

LatticeSplit split_by_lattice(const TriMesh& mesh, const Vec3& origin, double spacing);

/// Triangles of a split that lie in `cell`, as a standalone mesh that keeps
/// only the referenced vertices.
TriMesh extract_cell(const LatticeSplit& split, const std::array<int, 3>& cell);

/// Submesh of the given triangle indices with compacted vertices.
TriMesh submesh(const TriMesh& mesh, const std::vector<int>& triangles);

}  // namespace sepwidth::geom
