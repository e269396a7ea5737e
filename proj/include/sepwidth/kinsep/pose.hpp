#pragma once

#include "sepwidth/common/rng.hpp"
#include "sepwidth/common/vec3.hpp"
#include "sepwidth/geom/mesh.hpp"
#include "sepwidth/sgnperm/signed_permutation.hpp"

namespace sepwidth::kinsep {

/// y -> s(y) + x in R^3.
struct Pose {
  sgnperm::SignedPermutation s = sgnperm::SignedPermutation::identity(3);
  Vec3 x;

  Vec3 apply(const Vec3& y) const { return s.apply(y) + x; }
  Vec3 unapply(const Vec3& y) const { return s.inverse().apply(y - x); }
  /// (this o other)(y) = this(other(y)).
  Pose compose(const Pose& other) const { return {s.compose(other.s), s.apply(other.x) + x}; }
  Pose inverse() const {
    const auto si = s.inverse();
    return {si, -si.apply(x)};
  }
};

geom::TriMesh posed(const geom::TriMesh& mesh, const Pose& pose);

/// Uniform group element (from the 48) and uniform shift in [0,1)^3.
Pose random_pose(Rng& rng);

}  // namespace sepwidth::kinsep
