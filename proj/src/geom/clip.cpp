#include "sepwidth/geom/clip.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>

#include "sepwidth/common/errors.hpp"

namespace sepwidth::geom {

namespace {

// Planes are named by 64-bit ids whose low two bits hold the axis. A clipped
// vertex is named by how it arises, so the same point gets the same name (and
// bit-identical coordinates) in every triangle and cell that produces it.
enum class KeyType : int { kVertex, kEdge, kFace, kFree };

struct Key {
  KeyType type = KeyType::kVertex;
  int a = 0, b = 0;            // vertex / edge endpoints (a < b) / triangle, serial
  long long p = 0, q = 0;      // planes (p < q for faces)

  auto tie() const { return std::tie(type, a, b, p, q); }
  bool operator<(const Key& o) const { return tie() < o.tie(); }
  bool operator==(const Key& o) const { return tie() == o.tie(); }
};

int plane_axis(long long id) { return static_cast<int>(id & 3); }

struct PolyVertex {
  Key key;
  Vec3 x;
};

class Clipper {
 public:
  Clipper(const TriMesh& mesh, std::function<double(long long)> plane_value)
      : mesh_(mesh), value_(std::move(plane_value)) {}

  std::vector<PolyVertex> start(int tri) {
    tri_ = tri;
    serial_ = 0;
    std::vector<PolyVertex> poly;
    for (int k : mesh_.triangles[static_cast<std::size_t>(tri)])
      poly.push_back({{KeyType::kVertex, k, 0, 0, 0}, mesh_.vertices[static_cast<std::size_t>(k)]});
    return poly;
  }

  /// Splits `poly` by plane `id` into the parts with coordinate <= and >= its
  /// value. Vertices on the plane go to both.
  void split(const std::vector<PolyVertex>& poly, long long id, std::vector<PolyVertex>& below,
             std::vector<PolyVertex>& above) {
    below.clear();
    above.clear();
    const int axis = plane_axis(id);
    const double v = value_(id);
    const std::size_t n = poly.size();
    auto side = [&](const PolyVertex& pv) { return pv.x[axis] < v ? -1 : (pv.x[axis] > v ? 1 : 0); };
    for (std::size_t i = 0; i < n; ++i) {
      const PolyVertex& u = poly[i];
      const PolyVertex& w = poly[(i + 1) % n];
      const int su = side(u), sw = side(w);
      if (su <= 0) below.push_back(u);
      if (su >= 0) above.push_back(u);
      if (su * sw < 0) {
        const PolyVertex c = cut(u, w, id);
        below.push_back(c);
        above.push_back(c);
      }
    }
    if (below.size() < 3) below.clear();
    if (above.size() < 3) above.clear();
  }

 private:
  bool on_edge(const Key& k, int i, int j) const {
    if (k.type == KeyType::kVertex) return k.a == i || k.a == j;
    return k.type == KeyType::kEdge && k.a == i && k.b == j;
  }

  PolyVertex cut(const PolyVertex& u, const PolyVertex& w, long long id) {
    const Key &ku = u.key, &kw = w.key;
    // Carrier: the original edge or the plane both endpoints lie on.
    if (ku.type == KeyType::kVertex && kw.type == KeyType::kVertex)
      return edge_point(std::min(ku.a, kw.a), std::max(ku.a, kw.a), id);
    for (const Key* e : {&ku, &kw})
      if (e->type == KeyType::kEdge && on_edge(e == &ku ? kw : ku, e->a, e->b))
        return edge_point(e->a, e->b, id);
    auto planes = [](const Key& k) {
      std::vector<long long> out;
      if (k.type == KeyType::kEdge) out.push_back(k.p);
      if (k.type == KeyType::kFace) out = {k.p, k.q};
      return out;
    };
    for (long long pu : planes(ku))
      for (long long pw : planes(kw))
        if (pu == pw && plane_axis(pu) != plane_axis(id)) return face_point(pu, id);
    // Only reachable when an original vertex sits exactly on a plane.
    const int axis = plane_axis(id);
    const double t = (value_(id) - u.x[axis]) / (w.x[axis] - u.x[axis]);
    Vec3 x = lerp(u.x, w.x, t);
    x[axis] = value_(id);
    return {{KeyType::kFree, tri_, serial_++, 0, 0}, x};
  }

  PolyVertex edge_point(int i, int j, long long id) const {
    const int axis = plane_axis(id);
    const double v = value_(id);
    const Vec3& p = mesh_.vertices[static_cast<std::size_t>(i)];
    const Vec3& q = mesh_.vertices[static_cast<std::size_t>(j)];
    Vec3 x = lerp(p, q, (v - p[axis]) / (q[axis] - p[axis]));
    x[axis] = v;
    return {{KeyType::kEdge, i, j, id, 0}, x};
  }

  PolyVertex face_point(long long p1, long long p2) const {
    if (p2 < p1) std::swap(p1, p2);
    auto idx = mesh_.triangles[static_cast<std::size_t>(tri_)];
    std::sort(idx.begin(), idx.end());
    const Vec3& a = mesh_.vertices[static_cast<std::size_t>(idx[0])];
    const Vec3 n = cross(mesh_.vertices[static_cast<std::size_t>(idx[1])] - a,
                         mesh_.vertices[static_cast<std::size_t>(idx[2])] - a);
    const int ax1 = plane_axis(p1), ax2 = plane_axis(p2), free = 3 - ax1 - ax2;
    Vec3 x;
    x[ax1] = value_(p1);
    x[ax2] = value_(p2);
    x[free] = (dot(n, a) - n[ax1] * x[ax1] - n[ax2] * x[ax2]) / n[free];
    return {{KeyType::kFace, tri_, 0, p1, p2}, x};
  }

  const TriMesh& mesh_;
  std::function<double(long long)> value_;
  int tri_ = 0;
  int serial_ = 0;
};

class Assembler {
 public:
  int vertex(const PolyVertex& v) {
    auto [it, inserted] = index_.try_emplace(v.key, static_cast<int>(mesh.vertices.size()));
    if (inserted) mesh.vertices.push_back(v.x);
    return it->second;
  }
  /// Fan-triangulates a convex polygon; returns the number of triangles.
  int add(const std::vector<PolyVertex>& poly) {
    std::vector<int> ids;
    for (const auto& pv : poly) {
      const int id = vertex(pv);
      if (ids.empty() || ids.back() != id) ids.push_back(id);
    }
    while (ids.size() > 1 && ids.front() == ids.back()) ids.pop_back();
    int added = 0;
    for (std::size_t i = 1; i + 1 < ids.size(); ++i) {
      mesh.triangles.push_back({ids[0], ids[i], ids[i + 1]});
      ++added;
    }
    return added;
  }

  TriMesh mesh;

 private:
  std::map<Key, int> index_;
};

}  // namespace

TriMesh clip_mesh_to_cube(const TriMesh& mesh, const Box3& cube) {
  mesh.validate();
  // Plane id (side << 2 | axis): side 0 is the low face, 1 the high face.
  Clipper clipper(mesh, [&cube](long long id) {
    return (id >> 2) ? cube.hi[plane_axis(id)] : cube.lo[plane_axis(id)];
  });
  Assembler out;
  std::vector<PolyVertex> below, above;
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    const Box3 tb = mesh.triangle(t).bounds();
    if (!tb.overlaps(cube)) continue;
    auto poly = clipper.start(static_cast<int>(t));
    for (int axis = 0; axis < 3 && !poly.empty(); ++axis) {
      clipper.split(poly, axis, below, above);
      poly = above;
      if (poly.empty()) break;
      clipper.split(poly, (1 << 2) | axis, below, above);
      poly = below;
    }
    if (!poly.empty()) out.add(poly);
  }
  return out.mesh;
}

LatticeSplit split_by_lattice(const TriMesh& mesh, const Vec3& origin, double spacing) {
  mesh.validate();
  if (!(spacing > 0.0)) throw PreconditionError("lattice spacing must be positive");
  auto value = [&](long long id) {
    return origin[plane_axis(id)] + static_cast<double>(id >> 2) * spacing;
  };
  Clipper clipper(mesh, value);
  Assembler out;
  LatticeSplit split;
  split.min_plane_distance = INFINITY;
  for (const auto& v : mesh.vertices)
    for (int k = 0; k < 3; ++k) {
      const double u = (v[k] - origin[k]) / spacing;
      const double d = std::abs(u - std::round(u)) * spacing;
      split.min_plane_distance = std::min(split.min_plane_distance, d);
    }

  std::vector<PolyVertex> below, above;
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    const Box3 tb = mesh.triangle(t).bounds();
    std::vector<std::vector<PolyVertex>> pieces{clipper.start(static_cast<int>(t))};
    for (int axis = 0; axis < 3; ++axis) {
      const auto j0 = static_cast<long long>(std::floor((tb.lo[axis] - origin[axis]) / spacing));
      const auto j1 = static_cast<long long>(std::ceil((tb.hi[axis] - origin[axis]) / spacing));
      for (long long j = j0; j <= j1; ++j) {
        const long long id = j * 4 + axis;
        const double v = value(id);
        if (!(v > tb.lo[axis] && v < tb.hi[axis])) continue;
        std::vector<std::vector<PolyVertex>> next;
        for (const auto& poly : pieces) {
          clipper.split(poly, id, below, above);
          if (!below.empty()) next.push_back(below);
          if (!above.empty()) next.push_back(above);
        }
        pieces = std::move(next);
      }
    }
    for (const auto& poly : pieces) {
      Vec3 c;
      for (const auto& pv : poly) c += pv.x;
      c *= 1.0 / static_cast<double>(poly.size());
      std::array<int, 3> cell{};
      for (int k = 0; k < 3; ++k)
        cell[static_cast<std::size_t>(k)] =
            static_cast<int>(std::floor((c[k] - origin[k]) / spacing));
      const int added = out.add(poly);
      for (int i = 0; i < added; ++i) {
        split.cell.push_back(cell);
        split.parent.push_back(static_cast<int>(t));
      }
    }
  }
  split.mesh = std::move(out.mesh);
  return split;
}

TriMesh submesh(const TriMesh& mesh, const std::vector<int>& triangles) {
  TriMesh out;
  std::map<int, int> remap;
  for (int t : triangles) {
    std::array<int, 3> tri{};
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.triangles[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)];
      auto [it, inserted] = remap.try_emplace(v, static_cast<int>(out.vertices.size()));
      if (inserted) out.vertices.push_back(mesh.vertices[static_cast<std::size_t>(v)]);
      tri[static_cast<std::size_t>(k)] = it->second;
    }
    out.triangles.push_back(tri);
  }
  return out;
}

TriMesh extract_cell(const LatticeSplit& split, const std::array<int, 3>& cell) {
  std::vector<int> tris;
  for (std::size_t i = 0; i < split.cell.size(); ++i)
    if (split.cell[i] == cell) tris.push_back(static_cast<int>(i));
  return submesh(split.mesh, tris);
}

}  // namespace sepwidth::geom
