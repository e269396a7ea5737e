#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/kinsep/nerve.hpp"

namespace sepwidth::kinsep {

/// A map from sample points of M to a low-dimensional complex, with its
/// l-inf displacement.
struct WidthCertificate {
  std::string route;          // how the map was obtained
  int target_dimension = 0;   // dimension of the target complex
  NerveComplex nerve;         // empty for lattice-skeleton targets
  std::vector<std::pair<Vec3, Vec3>> sample_map;
  double sup_displacement = 0.0;
  double mesh_scale = 1.0;    // side of the lattice / separator cell
  double claimed_bound = 0.0;

  bool valid() const { return sup_displacement < claimed_bound; }
  /// Recomputes sup_displacement from sample_map.
  void finalize();
};

}  // namespace sepwidth::kinsep
