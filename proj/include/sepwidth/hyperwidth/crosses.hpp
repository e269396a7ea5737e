#pragma once

#include <array>
#include <vector>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/hyperwidth/decompose.hpp"

namespace sepwidth::hyperwidth {

/// A center inside a cube joined to one point of each open facet by paths
/// that only meet at the center. Paths are polylines from the center to the
/// facet point; in occupied cubes they run through voxel centers.
struct Cross {
  std::array<int, 3> cube{};
  bool trivial = false;              // cube does not meet M
  int res = 0;
  Vec3 center;
  std::array<int, 3> center_voxel{};
  std::array<Vec3, kFacets> endpoints;
  std::array<std::array<int, 2>, kFacets> endpoint_cells{};  // facet grid cell
  std::array<std::vector<Vec3>, kFacets> paths;
  std::array<std::vector<std::array<int, 3>>, kFacets> voxels;  // empty if trivial
};

struct CrossSet {
  int voxel_res = 0;                 // resolution actually used
  int refinements = 0;
  std::vector<Cross> crosses;        // occupied cubes and their face neighbors, sorted by cube

  const Cross* find(const std::array<int, 3>& cube) const;
};

/// Largest voxel resolution tried before giving up.
inline constexpr int kMaxCrossRes = 128;

/// Crosses avoiding M with matching endpoints on shared facets. Voxels used
/// by paths are clear: in U, not meeting M and with no face neighbor meeting
/// M. Routing failures double the resolution of every cube.
CrossSet build_crosses(const CubeDecomposition& dec);

}  // namespace sepwidth::hyperwidth
