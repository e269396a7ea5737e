#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::hyperwidth {

/// Facet order: (axis 0, low), (axis 0, high), (axis 1, low), ...
inline constexpr int kFacets = 6;

/// One connected piece A_i of M inside a cube and its small side V_i.
struct CubePiece {
  std::vector<int> triangles;        // indices into CubeData::mesh
  double area = 0.0;                 // A_i
  double volume = 0.0;               // V_i, from voxel counts
  std::array<double, kFacets> facet_area{};  // S_{i,j}
  double straddle_volume = 0.0;      // volume of voxels meeting A_i
  bool tie = false;                  // the two sides had equal voxel counts
  std::vector<std::uint8_t> small_side;  // per voxel, 1 if in V_i
};

/// Crossings of the voxel-center line (axis, i, j) with the pieces, sorted
/// by position.
struct LineCrossing {
  double pos = 0.0;
  int piece = 0;
};

struct CubeData {
  std::array<int, 3> index{};
  Box3 box;
  double side = 0.0;
  int res = 0;                       // voxels per axis
  geom::TriMesh mesh;                // M cap cube
  double area = 0.0;
  std::vector<CubePiece> pieces;
  std::vector<std::uint8_t> straddle;  // voxel box meets M
  std::vector<int> component;        // components of cube \ M over voxels
  int components = 0;
  // lines[axis][i * res + j]: crossings along axis through voxel centers with
  // coordinates i, j on axes (axis+1)%3, (axis+2)%3.
  std::array<std::vector<std::vector<LineCrossing>>, 3> lines;

  std::size_t voxel(int x, int y, int z) const {
    return (static_cast<std::size_t>(x) * static_cast<std::size_t>(res) + static_cast<std::size_t>(y)) *
               static_cast<std::size_t>(res) + static_cast<std::size_t>(z);
  }
  double voxel_side() const { return side / res; }
  Vec3 voxel_center(int x, int y, int z) const;
  /// Whether the edge between voxel v and its +axis neighbor crosses piece
  /// `piece` (or any piece when piece < 0).
  bool edge_blocked(const std::array<int, 3>& v, int axis, int piece = -1) const;
};

struct CubeDecomposition {
  double side = 0.0;
  Vec3 origin;                       // lattice origin after jitter
  int voxel_res = 0;
  int jitter_attempts = 0;
  std::vector<CubeData> cubes;       // occupied cubes, sorted by index
  double area = 0.0;

  /// Cube with the given index, or nullptr.
  const CubeData* find(const std::array<int, 3>& index) const;
};

/// Requires a closed mesh. Cubes [origin + l k, origin + l (k+1)]; the
/// origin is jittered by at most 1e-6 l until no vertex is within 1e-9 l of
/// a lattice plane (5 retries). An empty mesh gives one trivial cube at
/// index 0.
CubeDecomposition decompose(const geom::TriMesh& mesh, double side, int voxel_res,
                            std::uint64_t seed);

/// Per-cube analysis at a given voxel resolution (exposed for tests).
CubeData analyze_cube(const geom::TriMesh& piece_mesh, const std::array<int, 3>& index,
                      const Box3& box, int res);

struct IsoperimetricCheck {
  double area = 0.0, volume = 0.0;   // normalized by l^2, l^3
  double delta = 0.0;                // relative slack from voxel error
  double bound = 0.0;                // 4 V (1 - V) (1 - delta)
  bool ok = false;
};

struct GoodComponent {
  std::vector<std::uint8_t> in_u;               // per voxel
  std::array<double, kFacets> facet_fraction{}; // area of U on the facet / l^2
  std::array<double, kFacets> facet_error{};    // straddling layer voxels / l^2
  double min_facet_fraction = 0.0;
  int u_components = 0;                         // over the voxel graph of cube \ M
  double delta_grid = 0.0;                      // max over pieces
  std::vector<IsoperimetricCheck> isoperimetric;
  bool isoperimetric_ok = true;
};

/// Requires area(A) < l^2 / 3 (PreconditionError). Throws FalsificationError
/// if a facet of U has area at most l^2 / 2.
GoodComponent good_component(const CubeData& cube);

/// Whether a triangle meets a closed axis-aligned box (separating axes).
bool triangle_box_overlap(const geom::Triangle& t, const Box3& box);

}  // namespace sepwidth::hyperwidth
