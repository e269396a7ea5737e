#pragma once

#include <cstddef>
#include <cstdint>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::kinsep {

struct AvoidResult {
  Vec3 t;                      // shift of the axis lines (valid when found)
  bool found = false;
  std::size_t draws = 0;       // candidates tried, including the accepted one
  std::size_t rejected = 0;    // candidates with hits or grazing contact
  std::size_t degenerate = 0;  // of which grazing
  std::size_t hits = 0;        // axis-line hits at t (0 when found)
  double bad_fraction = 0.0;   // rejected / draws, an estimate of the bad-shift measure
};

inline constexpr std::size_t kAvoidMaxDraws = 10000;

/// Finds t in [0,1)^3 such that no line t + Z^3 + R e_k (k = 0, 1, 2) meets
/// M. Requires area(M) < 1/sqrt(3); throws PreconditionError otherwise.
/// Throws SearchExhausted after max_draws candidates (the message carries the
/// bad-measure estimate); `result` receives the partial record either way.
AvoidResult coordinate_subspace_avoid(const geom::TriMesh& mesh, std::uint64_t seed,
                                      std::size_t max_draws = kAvoidMaxDraws);

/// Hits of the periodic axis lines through t with M; sets *degenerate on a
/// grazing contact.
std::size_t axis_line_hits(const geom::TriMesh& mesh, const Vec3& t, bool* degenerate = nullptr);

}  // namespace sepwidth::kinsep
