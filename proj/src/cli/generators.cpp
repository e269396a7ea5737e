#include "sepwidth/cli/generators.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/rng.hpp"

namespace sepwidth::cli {

namespace {

// Unit icosphere (center 0).
geom::TriMesh unit_icosphere(int subdivisions) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  geom::TriMesh m;
  m.vertices = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  for (auto& v : m.vertices) v = normalized(v);
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                 {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                 {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                 {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (int s = 0; s < subdivisions; ++s) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto [it, inserted] = mid.try_emplace(key, static_cast<int>(m.vertices.size()));
      if (inserted)
        m.vertices.push_back(normalized(m.vertices[static_cast<std::size_t>(a)] +
                                        m.vertices[static_cast<std::size_t>(b)]));
      return it->second;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(m.triangles.size() * 4);
    for (const auto& t : m.triangles) {
      const int a = midpoint(t[0], t[1]), b = midpoint(t[1], t[2]), c = midpoint(t[2], t[0]);
      next.push_back({t[0], a, c});
      next.push_back({t[1], b, a});
      next.push_back({t[2], c, b});
      next.push_back({a, b, c});
    }
    m.triangles = std::move(next);
  }
  return m;
}

void check_subdivisions(int s) {
  if (s < 0 || s > 7) throw PreconditionError("subdivisions must be in [0, 7]");
}

}  // namespace

geom::TriMesh icosphere(double radius, int subdivisions, const Vec3& center) {
  if (!(radius > 0.0)) throw PreconditionError("radius must be positive");
  check_subdivisions(subdivisions);
  geom::TriMesh m = unit_icosphere(subdivisions);
  for (auto& v : m.vertices) v = center + v * radius;
  return m;
}

geom::TriMesh torus(double major, double minor, int nu, int nv, const Vec3& center) {
  if (!(minor > 0.0) || !(major > minor)) throw PreconditionError("torus needs R > r > 0");
  if (nu < 3 || nv < 3) throw PreconditionError("torus needs at least 3 segments per direction");
  geom::TriMesh m;
  const double two_pi = 2.0 * std::numbers::pi;
  for (int i = 0; i < nu; ++i) {
    const double u = two_pi * i / nu;
    for (int j = 0; j < nv; ++j) {
      const double v = two_pi * j / nv;
      const double ring = major + minor * std::cos(v);
      m.vertices.push_back(center + Vec3{ring * std::cos(u), ring * std::sin(u), minor * std::sin(v)});
    }
  }
  auto id = [nu, nv](int i, int j) { return ((i + nu) % nu) * nv + (j + nv) % nv; };
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

geom::TriMesh perturbed_sphere(double radius, int subdivisions, double amplitude,
                               std::uint64_t seed, const Vec3& center) {
  if (!(amplitude >= 0.0 && amplitude < 0.5)) throw PreconditionError("amplitude must be in [0, 0.5)");
  geom::TriMesh m = icosphere(1.0, subdivisions);
  // g(u) = sum_k w_k cos(f_k . u + phase_k) with sum |w_k| = 1.
  constexpr int kModes = 6;
  Rng rng(seed, 0x9e77);
  std::vector<Vec3> freq;
  std::vector<double> weight, phase;
  double total = 0.0;
  for (int k = 0; k < kModes; ++k) {
    Vec3 d{rng.normal(), rng.normal(), rng.normal()};
    freq.push_back(normalized(d) * (1.0 + 2.0 * rng.uniform()));
    phase.push_back(2.0 * std::numbers::pi * rng.uniform());
    weight.push_back(rng.uniform(0.2, 1.0));
    total += weight.back();
  }
  for (auto& v : m.vertices) {
    double g = 0.0;
    for (int k = 0; k < kModes; ++k)
      g += weight[static_cast<std::size_t>(k)] *
           std::cos(dot(freq[static_cast<std::size_t>(k)], v) + phase[static_cast<std::size_t>(k)]);
    v = center + v * (radius * (1.0 + amplitude * (g / total)));
  }
  return m;
}

}  // namespace sepwidth::cli
