#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sepwidth/common/rng.hpp"
#include "sepwidth/common/vec3.hpp"

namespace sepwidth::geom {

struct Triangle {
  Vec3 a, b, c;

  Vec3 normal() const { return cross(b - a, c - a); }  // length = 2 * area
  double area() const { return 0.5 * norm(normal()); }
  Box3 bounds() const {
    Box3 box;
    box.extend(a);
    box.extend(b);
    box.extend(c);
    return box;
  }
  const Vec3& operator[](int i) const { return i == 0 ? a : (i == 1 ? b : c); }
};

/// Triangle soup over shared vertices. Ambient dimension 3.
struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> triangles;

  bool empty() const { return triangles.empty(); }
  std::size_t size() const { return triangles.size(); }
  Triangle triangle(std::size_t i) const {
    const auto& t = triangles[i];
    return {vertices[static_cast<std::size_t>(t[0])], vertices[static_cast<std::size_t>(t[1])],
            vertices[static_cast<std::size_t>(t[2])]};
  }
  Box3 bounds() const;

  /// Throws PreconditionError on out-of-range or repeated indices.
  void validate() const;
};

/// A triangle is degenerate when its area is at most kGeometric times the
/// square of its longest edge.
bool is_degenerate(const Triangle& t);

/// Sum of triangle areas. Degenerate triangles count 0 and are reported
/// through `warnings` when given.
double mesh_area(const TriMesh& mesh, std::vector<std::string>* warnings = nullptr);

/// Every undirected edge is shared by exactly two triangles.
bool is_closed(const TriMesh& mesh);

/// V - E + F over referenced vertices.
long euler_characteristic(const TriMesh& mesh);

TriMesh transformed(const TriMesh& mesh, const std::function<Vec3(const Vec3&)>& map);
TriMesh scaled(const TriMesh& mesh, double factor);
TriMesh translated(const TriMesh& mesh, const Vec3& offset);

/// Concatenates meshes (vertex indices of later meshes are shifted).
TriMesh merged(const std::vector<TriMesh>& parts);

/// Area-weighted uniform points on the surface.
std::vector<Vec3> sample_surface(const TriMesh& mesh, std::size_t count, Rng& rng);

}  // namespace sepwidth::geom
