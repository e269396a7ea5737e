#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::hyperwidth {

/// A closed edge path of the refined mesh inside an axis-aligned cube whose
/// ℤ/2 homology class in M is nonzero.
struct CurveCertificate {
  Box3 cube;
  double side = 0.0;
  std::vector<Vec3> cycle;                     // closed polyline, first != last
  std::vector<std::pair<int, int>> edges;      // refined-mesh vertex pairs
  std::vector<std::uint8_t> pairing;           // values of the cohomology basis on the cycle
  bool rank_verified = false;                  // independent boundary-matrix check
};

struct EssentialResult {
  std::optional<CurveCertificate> certificate;
  int betti1 = 0;                              // dim H1(M; Z/2)
  long euler = 0;
  int components = 0;
  std::size_t cubes_scanned = 0;
  std::size_t refined_triangles = 0;
  geom::TriMesh refined;                       // M cut by the half-side grid; certificate indices refer to it
};

/// ℤ/2 first Betti number of a closed surface mesh, by tree-cotree.
int z2_betti1(const geom::TriMesh& mesh);

/// Whether the edge set (vertex pairs, each edge once) is a ℤ/2 boundary in
/// the closed mesh: rank [∂2 | z] == rank ∂2, by sparse column reduction.
bool z2_is_boundary(const geom::TriMesh& mesh, const std::vector<std::pair<int, int>>& edges);

/// Scans cubes of the given side on a half-side grid anchored just below the
/// bounding box. For each, the image of H1(M ∩ cube) in H1(M) over ℤ/2 is
/// computed on the clipped submesh; the first cube (in index order) with a
/// nonzero image yields the certificate. Requires a closed mesh with
/// positive Betti number.
EssentialResult essential_curve_in_cube(const geom::TriMesh& mesh, double side, std::uint64_t seed = 0);

}  // namespace sepwidth::hyperwidth
