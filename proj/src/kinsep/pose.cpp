#include "sepwidth/kinsep/pose.hpp"

#include <bit>
#include <utility>

namespace sepwidth::kinsep {

geom::TriMesh posed(const geom::TriMesh& mesh, const Pose& pose) {
  geom::TriMesh out = geom::transformed(mesh, [&pose](const Vec3& v) { return pose.apply(v); });
  // A reflection reverses orientation; keep outward normals outward.
  const int flips = std::popcount(pose.s.sign_mask());
  const int p0 = pose.s.perm(0), p1 = pose.s.perm(1), p2 = pose.s.perm(2);
  const int inversions = (p0 > p1) + (p0 > p2) + (p1 > p2);
  if ((flips + inversions) % 2 == 1)
    for (auto& t : out.triangles) std::swap(t[1], t[2]);
  return out;
}

Pose random_pose(Rng& rng) {
  static const auto group = sgnperm::enumerate_group(3);
  Pose p;
  p.s = group[rng.below(group.size())];
  p.x = {rng.uniform(), rng.uniform(), rng.uniform()};
  return p;
}

}  // namespace sepwidth::kinsep
