#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sepwidth/geom/mesh.hpp"
#include "sepwidth/kinsep/certificate.hpp"
#include "sepwidth/kinsep/kinematic.hpp"
#include "sepwidth/kinsep/tower.hpp"

namespace sepwidth::kinsep {

struct HighCodimOptions {
  std::size_t pose_budget = kDefaultPoseSamples;
  std::size_t mesh_samples = 2000;  // surface samples mapped, besides the vertices
};

/// Pose search record of one route.
struct RouteReport {
  bool success = false;
  std::size_t poses_tried = 0;
  std::size_t degenerate_poses = 0;
  std::size_t chosen = 0;
  std::vector<double> masses;     // last-stage measure per non-degenerate pose
  double mean_mass = 0.0, mean_mass_se = 0.0;
  double averaging_bound = 0.0;   // expected mass over uniform poses, upper bound
  bool contradicts_bound = false; // mean > bound + 4 SE
  std::vector<Pose> poses;        // the selected copies
  double curve_length = 0.0;      // two-step route: length of M on the first copy
};

struct HighCodimResult {
  bool success = false;
  WidthCertificate certificate;
  RouteReport separator_route;  // M against a posed level-1 set
  RouteReport copies_route;     // M against two posed level-0 copies in turn
};

/// Length of M cap (pose(S0)) with the segments, for the foam surface S0.
double mesh_surface_curve(const geom::TriMesh& mesh, const PosedFoam& copy,
                          std::vector<geom::Segment>* out);
/// Crossings of segments with a posed foam surface.
std::size_t segments_surface_hits(const std::vector<geom::Segment>& segments,
                                  const PosedFoam& copy);
/// Hits of M with the periodic level-1 set of `tower` posed by `pose`.
std::size_t mesh_separator_hits(const geom::TriMesh& mesh, const SeparatorTower& tower,
                                const Pose& pose, bool* degenerate);

/// Requires (2 pi)^2 sqrt(2) area(M) < 1 and a tower with level 1.
HighCodimResult width_pipeline_highcodim(const geom::TriMesh& mesh, const SeparatorTower& tower,
                                         std::uint64_t seed, const HighCodimOptions& options = {});

}  // namespace sepwidth::kinsep
