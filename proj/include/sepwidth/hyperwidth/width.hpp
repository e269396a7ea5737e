#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "sepwidth/hyperwidth/decompose.hpp"
#include "sepwidth/hyperwidth/skeleton.hpp"
#include "sepwidth/kinsep/certificate.hpp"

namespace sepwidth::hyperwidth {

/// Relative margin in l = sqrt(3 area) (1 + eps).
inline constexpr double kLatticeMargin = 1e-3;
inline constexpr std::size_t kCodim1Samples = 10000;

/// Summary of the good-component pass over a decomposition.
struct DecompositionSummary {
  std::size_t cubes = 0;
  std::size_t pieces = 0;
  std::size_t ties = 0;
  double max_cube_area = 0.0;        // in units of l^2
  double min_facet_fraction = 1.0;
  double max_delta_grid = 0.0;
  bool isoperimetric_ok = true;
  std::size_t isoperimetric_pieces = 0;
  std::size_t vacuous_pieces = 0;          // delta_grid >= 1: the check says nothing
  std::size_t point_failures = 0;          // A_i < 4 V_i (1 - V_i) at the voxel estimate of V_i
  double min_facet_margin = 1.0;           // facet fraction - 1/2 - facet voxel error
  int max_u_components = 0;
  int jitter_attempts = 0;
};

/// Runs good_component on every cube. Falsification and precondition errors
/// propagate.
DecompositionSummary summarize(const CubeDecomposition& dec);

struct Codim1Result {
  kinsep::WidthCertificate certificate;
  DualSkeletonT T;
  double area = 0.0;
  double l = 0.0;
  std::size_t same_cube_failures = 0;  // samples whose image left the closed cube
  std::size_t jittered = 0;
  std::optional<DecompositionSummary> decomposition;  // when voxel_res > 0
};

/// Lattice side l = sqrt(3 area(M)) (1 + eps); T from the three-plane sweep
/// at that scale; the certificate maps the vertices and `samples` surface
/// points through retraction_phi. voxel_res > 0 also decomposes M at the
/// same lattice and checks good components.
Codim1Result width_certificate_codim1(const geom::TriMesh& mesh, int voxel_res, int sweep_res,
                                      std::uint64_t seed, std::size_t samples = kCodim1Samples);

}  // namespace sepwidth::hyperwidth
