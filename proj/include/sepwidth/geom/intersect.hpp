#pragma once

#include <cstddef>
#include <vector>

#include "sepwidth/geom/mesh.hpp"

namespace sepwidth::geom {

struct Segment {
  Vec3 a, b;
  double length() const { return norm(b - a); }
};

enum class TriTriKind { kEmpty, kSegment, kCoplanar };

struct TriTriResult {
  TriTriKind kind = TriTriKind::kEmpty;
  Vec3 p, q;  // segment endpoints when kind == kSegment (may coincide)
};

/// Intersection of two non-degenerate triangles. Coplanar contact is
/// reported as kCoplanar without computing the overlap polygon.
TriTriResult tri_tri_intersection(const Triangle& t1, const Triangle& t2);

enum class SegTriKind { kMiss, kHit, kDegenerate };

/// Segment p->q against a triangle. kDegenerate means the contact is within
/// tolerance of an edge, a vertex, an endpoint or the triangle's plane; the
/// caller should jitter. `param` gets the crossing parameter on a hit.
SegTriKind segment_triangle(const Vec3& p, const Vec3& q, const Triangle& t,
                            double* param = nullptr);

struct SegmentHit {
  double t = 0.0;  // parameter along the segment, in [0, 1]
  Vec3 point;
  int triangle = -1;
};

struct SegmentHits {
  std::vector<SegmentHit> hits;  // sorted by (t, triangle)
  bool degenerate = false;
  std::size_t count() const { return hits.size(); }
};

class MeshBvh;

/// Transversal crossings of a segment with a mesh.
SegmentHits segment_mesh_hits(const Segment& seg, const TriMesh& mesh);
SegmentHits segment_mesh_hits(const Segment& seg, const MeshBvh& bvh);

}  // namespace sepwidth::geom
