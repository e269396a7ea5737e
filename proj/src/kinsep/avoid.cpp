#include "sepwidth/kinsep/avoid.hpp"

#include <cmath>
#include <string>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/geom/bvh.hpp"
#include "sepwidth/geom/intersect.hpp"

namespace sepwidth::kinsep {

namespace {

std::size_t line_hits(const geom::MeshBvh& bvh, const Vec3& t, bool* degenerate) {
  const Box3& box = bvh.bounds();
  std::size_t total = 0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const auto first = [&](int k) { return static_cast<long>(std::ceil(box.lo[k] - t[k])); };
    const auto last = [&](int k) { return static_cast<long>(std::floor(box.hi[k] - t[k])); };
    for (long i = first(b); i <= last(b); ++i) {
      for (long j = first(c); j <= last(c); ++j) {
        Vec3 p, q;
        p[b] = q[b] = t[b] + static_cast<double>(i);
        p[c] = q[c] = t[c] + static_cast<double>(j);
        p[a] = box.lo[a] - 1.0;
        q[a] = box.hi[a] + 1.0;
        const auto hits = geom::segment_mesh_hits(geom::Segment{p, q}, bvh);
        if (hits.degenerate && degenerate) *degenerate = true;
        total += hits.count();
      }
    }
  }
  return total;
}

}  // namespace

std::size_t axis_line_hits(const geom::TriMesh& mesh, const Vec3& t, bool* degenerate) {
  if (degenerate) *degenerate = false;
  if (mesh.empty()) return 0;
  return line_hits(geom::MeshBvh(mesh), t, degenerate);
}

AvoidResult coordinate_subspace_avoid(const geom::TriMesh& mesh, std::uint64_t seed,
                                      std::size_t max_draws) {
  const double area = geom::mesh_area(mesh);
  if (!(area < 1.0 / std::sqrt(3.0)))
    throw PreconditionError("coordinate_subspace_avoid: area " + format_double(area) +
                            " is not below 1/sqrt(3)");
  AvoidResult out;
  Rng rng(seed);
  if (mesh.empty()) {
    out.t = {rng.uniform(), rng.uniform(), rng.uniform()};
    out.found = true;
    out.draws = 1;
    return out;
  }
  const geom::MeshBvh bvh(mesh);
  while (out.draws < max_draws) {
    const Vec3 t{rng.uniform(), rng.uniform(), rng.uniform()};
    ++out.draws;
    bool degenerate = false;
    const std::size_t hits = line_hits(bvh, t, &degenerate);
    if (hits == 0 && !degenerate) {
      out.t = t;
      out.found = true;
      out.hits = 0;
      break;
    }
    ++out.rejected;
    if (degenerate) ++out.degenerate;
  }
  out.bad_fraction = static_cast<double>(out.rejected) / static_cast<double>(out.draws);
  if (!out.found)
    throw SearchExhausted("coordinate_subspace_avoid: no shift in " + std::to_string(max_draws) +
                          " draws; bad-measure estimate " + format_double(out.bad_fraction));
  return out;
}

}  // namespace sepwidth::kinsep
