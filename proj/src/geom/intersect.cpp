#include "sepwidth/geom/intersect.hpp"

#include <algorithm>
#include <array>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/tolerances.hpp"
#include "sepwidth/geom/bvh.hpp"

namespace sepwidth::geom {

namespace {

double longest_edge(const Triangle& t) {
  return std::max({norm(t.b - t.a), norm(t.c - t.b), norm(t.a - t.c)});
}

struct Interval {
  double lo = 0.0, hi = 0.0;
  Vec3 plo, phi;
  bool empty = true;
};

// Points of `t` on the plane whose signed distances are `d`, projected on `dir`.
Interval plane_section(const Triangle& t, const std::array<double, 3>& d, double eps,
                       const Vec3& dir) {
  Interval iv;
  auto add = [&](const Vec3& p) {
    const double s = dot(p, dir);
    if (iv.empty || s < iv.lo) {
      iv.lo = s;
      iv.plo = p;
    }
    if (iv.empty || s > iv.hi) {
      iv.hi = s;
      iv.phi = p;
    }
    iv.empty = false;
  };
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const double di = d[static_cast<std::size_t>(i)], dj = d[static_cast<std::size_t>(j)];
    if (std::abs(di) <= eps) add(t[i]);
    if ((di > eps && dj < -eps) || (di < -eps && dj > eps)) add(lerp(t[i], t[j], di / (di - dj)));
  }
  return iv;
}

}  // namespace

TriTriResult tri_tri_intersection(const Triangle& t1, const Triangle& t2) {
  const double eps = tol::kGeometric * std::max({1.0, longest_edge(t1), longest_edge(t2)});
  const Vec3 n1 = normalized(t1.normal()), n2 = normalized(t2.normal());
  std::array<double, 3> d1{}, d2{};
  for (int i = 0; i < 3; ++i) {
    d1[static_cast<std::size_t>(i)] = dot(n2, t1[i] - t2.a);
    d2[static_cast<std::size_t>(i)] = dot(n1, t2[i] - t1.a);
  }
  auto separated = [eps](const std::array<double, 3>& d) {
    return (d[0] > eps && d[1] > eps && d[2] > eps) || (d[0] < -eps && d[1] < -eps && d[2] < -eps);
  };
  if (separated(d1) || separated(d2)) return {};
  auto flat = [eps](const std::array<double, 3>& d) {
    return std::abs(d[0]) <= eps && std::abs(d[1]) <= eps && std::abs(d[2]) <= eps;
  };
  if (flat(d1) || flat(d2)) return {TriTriKind::kCoplanar, {}, {}};

  const Vec3 dir = normalized(cross(n1, n2));
  const Interval a = plane_section(t1, d1, eps, dir);
  const Interval b = plane_section(t2, d2, eps, dir);
  if (a.empty || b.empty) return {};
  const double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo > hi + eps) return {};
  TriTriResult r;
  r.kind = TriTriKind::kSegment;
  r.p = a.lo >= b.lo ? a.plo : b.plo;
  r.q = a.hi <= b.hi ? a.phi : b.phi;
  if (hi < lo) r.q = r.p;
  return r;
}

SegTriKind segment_triangle(const Vec3& p, const Vec3& q, const Triangle& t, double* param) {
  const Vec3 n = t.normal();
  const double nn = norm(n);
  if (nn == 0.0) return SegTriKind::kMiss;
  const Vec3 u = n * (1.0 / nn);
  const double eps = tol::kGeometric * std::max({1.0, longest_edge(t), norm(q - p)});
  const double dp = dot(u, p - t.a), dq = dot(u, q - t.a);
  if ((dp > eps && dq > eps) || (dp < -eps && dq < -eps)) return SegTriKind::kMiss;

  // Signed in-plane distance of x to each edge line; positive inside.
  auto min_edge_distance = [&](const Vec3& x) {
    double m = INFINITY;
    for (int i = 0; i < 3; ++i) {
      const Vec3& a = t[i];
      const Vec3& b = t[(i + 1) % 3];
      m = std::min(m, dot(cross(b - a, x - a), u) / norm(b - a));
    }
    return m;
  };

  const bool p_on = std::abs(dp) <= eps, q_on = std::abs(dq) <= eps;
  if (p_on && q_on) {
    // Segment lies in the plane: flag if it comes near the triangle at all.
    Box3 box = t.bounds();
    Box3 sb;
    sb.extend(p);
    sb.extend(q);
    for (int k = 0; k < 3; ++k) {
      box.lo[k] -= eps;
      box.hi[k] += eps;
    }
    return box.overlaps(sb) ? SegTriKind::kDegenerate : SegTriKind::kMiss;
  }
  if (p_on || q_on) {
    const Vec3 x = p_on ? p : q;
    return min_edge_distance(x) >= -eps ? SegTriKind::kDegenerate : SegTriKind::kMiss;
  }
  const double s = dp / (dp - dq);
  const Vec3 x = lerp(p, q, s);
  const double m = min_edge_distance(x);
  if (m < -eps) return SegTriKind::kMiss;
  if (m <= eps) return SegTriKind::kDegenerate;
  if (param) *param = s;
  return SegTriKind::kHit;
}

namespace {

void check_segment(const Segment& seg) {
  if (seg.a == seg.b) throw PreconditionError("segment has zero length");
}

void add_hit(SegmentHits& out, const Segment& seg, const Triangle& t, int index) {
  double s = 0.0;
  switch (segment_triangle(seg.a, seg.b, t, &s)) {
    case SegTriKind::kHit:
      out.hits.push_back({s, lerp(seg.a, seg.b, s), index});
      break;
    case SegTriKind::kDegenerate:
      out.degenerate = true;
      break;
    case SegTriKind::kMiss:
      break;
  }
}

void sort_hits(SegmentHits& out) {
  std::sort(out.hits.begin(), out.hits.end(), [](const SegmentHit& a, const SegmentHit& b) {
    return a.t < b.t || (a.t == b.t && a.triangle < b.triangle);
  });
}

}  // namespace

SegmentHits segment_mesh_hits(const Segment& seg, const TriMesh& mesh) {
  check_segment(seg);
  SegmentHits out;
  Box3 sb;
  sb.extend(seg.a);
  sb.extend(seg.b);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Triangle t = mesh.triangle(i);
    Box3 tb = t.bounds();
    for (int k = 0; k < 3; ++k) {
      tb.lo[k] -= 1e-9 * (1.0 + std::abs(tb.lo[k]));
      tb.hi[k] += 1e-9 * (1.0 + std::abs(tb.hi[k]));
    }
    if (!tb.overlaps(sb)) continue;
    add_hit(out, seg, t, static_cast<int>(i));
  }
  sort_hits(out);
  return out;
}

SegmentHits segment_mesh_hits(const Segment& seg, const MeshBvh& bvh) {
  check_segment(seg);
  SegmentHits out;
  bvh.query_segment(seg.a, seg.b, [&](int i) { add_hit(out, seg, bvh.triangle(i), i); });
  sort_hits(out);
  return out;
}

}  // namespace sepwidth::geom
