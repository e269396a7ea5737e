#pragma once

#include <functional>
#include <vector>

#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::geom {

/// Bounding-volume hierarchy over a mesh's triangles (median split). Keeps
/// its own copy of the triangle geometry.
class MeshBvh {
 public:
  explicit MeshBvh(const TriMesh& mesh);

  std::size_t size() const { return tris_.size(); }
  const Triangle& triangle(int i) const { return tris_[static_cast<std::size_t>(i)]; }
  const Box3& bounds() const;

  /// Calls visit(i) for triangles whose box overlaps the segment's slab
  /// path. Order is deterministic.
  void query_segment(const Vec3& p, const Vec3& q, const std::function<void(int)>& visit) const;
  void query_box(const Box3& box, const std::function<void(int)>& visit) const;

 private:
  struct Node {
    Box3 box;
    int left = -1, right = -1;  // children, or -1 for a leaf
    int first = 0, count = 0;   // leaf range in order_
  };
  int build(int first, int count, int depth);

  std::vector<Triangle> tris_;
  std::vector<Box3> boxes_;
  std::vector<Vec3> centers_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
};

}  // namespace sepwidth::geom
