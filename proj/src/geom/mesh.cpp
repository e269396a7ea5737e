#include "sepwidth/geom/mesh.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/tolerances.hpp"

namespace sepwidth::geom {

Box3 TriMesh::bounds() const {
  Box3 box;
  for (const auto& t : triangles)
    for (int k : t) box.extend(vertices[static_cast<std::size_t>(k)]);
  return box;
}

void TriMesh::validate() const {
  const auto n = static_cast<long>(vertices.size());
  for (std::size_t i = 0; i < triangles.size(); ++i) {
    const auto& t = triangles[i];
    for (int k : t)
      if (k < 0 || k >= n)
        throw PreconditionError("triangle " + std::to_string(i) + " has index out of range");
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw PreconditionError("triangle " + std::to_string(i) + " repeats a vertex");
  }
}

bool is_degenerate(const Triangle& t) {
  const double longest = std::max({dot(t.b - t.a, t.b - t.a), dot(t.c - t.b, t.c - t.b),
                                   dot(t.a - t.c, t.a - t.c)});
  return t.area() <= tol::kGeometric * longest;
}

double mesh_area(const TriMesh& mesh, std::vector<std::string>* warnings) {
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Triangle t = mesh.triangle(i);
    if (is_degenerate(t)) {
      if (warnings) warnings->push_back("degenerate triangle " + std::to_string(i));
      continue;
    }
    total += t.area();
  }
  return total;
}

namespace {
std::map<std::pair<int, int>, int> edge_counts(const TriMesh& mesh) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      const int a = t[static_cast<std::size_t>(e)], b = t[static_cast<std::size_t>((e + 1) % 3)];
      ++count[{std::min(a, b), std::max(a, b)}];
    }
  return count;
}
}  // namespace

bool is_closed(const TriMesh& mesh) {
  for (const auto& [edge, n] : edge_counts(mesh))
    if (n != 2) return false;
  return true;
}

long euler_characteristic(const TriMesh& mesh) {
  std::set<int> used;
  for (const auto& t : mesh.triangles) used.insert(t.begin(), t.end());
  return static_cast<long>(used.size()) - static_cast<long>(edge_counts(mesh).size()) +
         static_cast<long>(mesh.size());
}

TriMesh transformed(const TriMesh& mesh, const std::function<Vec3(const Vec3&)>& map) {
  TriMesh out = mesh;
  for (auto& v : out.vertices) v = map(v);
  return out;
}

TriMesh scaled(const TriMesh& mesh, double factor) {
  return transformed(mesh, [factor](const Vec3& v) { return v * factor; });
}

TriMesh translated(const TriMesh& mesh, const Vec3& offset) {
  return transformed(mesh, [&offset](const Vec3& v) { return v + offset; });
}

TriMesh merged(const std::vector<TriMesh>& parts) {
  TriMesh out;
  for (const auto& p : parts) {
    const int base = static_cast<int>(out.vertices.size());
    out.vertices.insert(out.vertices.end(), p.vertices.begin(), p.vertices.end());
    for (auto t : p.triangles) {
      for (int& k : t) k += base;
      out.triangles.push_back(t);
    }
  }
  return out;
}

std::vector<Vec3> sample_surface(const TriMesh& mesh, std::size_t count, Rng& rng) {
  std::vector<double> cumulative;
  cumulative.reserve(mesh.size());
  double total = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    total += mesh.triangle(i).area();
    cumulative.push_back(total);
  }
  std::vector<Vec3> out;
  if (total <= 0.0) return out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    const double pick = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    if (it == cumulative.end()) --it;
    const Triangle t = mesh.triangle(static_cast<std::size_t>(it - cumulative.begin()));
    double u = rng.uniform(), v = rng.uniform();
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    out.push_back(t.a + (t.b - t.a) * u + (t.c - t.a) * v);
  }
  return out;
}

}  // namespace sepwidth::geom
