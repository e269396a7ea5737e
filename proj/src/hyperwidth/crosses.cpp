#include "sepwidth/hyperwidth/crosses.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/parallel.hpp"

namespace sepwidth::hyperwidth {

const Cross* CrossSet::find(const std::array<int, 3>& cube) const {
  const auto it = std::lower_bound(crosses.begin(), crosses.end(), cube,
                                   [](const Cross& c, const std::array<int, 3>& k) { return c.cube < k; });
  return it != crosses.end() && it->cube == cube ? &*it : nullptr;
}

namespace {

using Index = std::array<int, 3>;
using Cell = std::array<int, 2>;

struct Routed {
  const CubeData* data = nullptr;
  std::vector<std::uint8_t> in_u;
  std::vector<std::uint8_t> clear;
};

struct RoutingFailure {};

Index neighbor(Index k, int axis, int dir) {
  k[static_cast<std::size_t>(axis)] += dir;
  return k;
}

Box3 cube_box(const CubeDecomposition& dec, const Index& k) {
  Box3 box;
  for (int a = 0; a < 3; ++a) {
    box.lo[a] = dec.origin[a] + dec.side * k[static_cast<std::size_t>(a)];
    box.hi[a] = box.lo[a] + dec.side;
  }
  return box;
}

std::size_t layer_voxel(const CubeData& c, int axis, int side, int i, int j) {
  std::array<int, 3> v{};
  v[static_cast<std::size_t>(axis)] = side == 0 ? 0 : c.res - 1;
  v[static_cast<std::size_t>((axis + 1) % 3)] = i;
  v[static_cast<std::size_t>((axis + 2) % 3)] = j;
  return c.voxel(v[0], v[1], v[2]);
}

Routed prepare(const CubeData& c) {
  Routed r;
  r.data = &c;
  r.in_u = good_component(c).in_u;
  const int n = c.res;
  r.clear.assign(r.in_u.size(), 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const std::size_t v = c.voxel(x, y, z);
        if (!r.in_u[v] || c.straddle[v]) continue;
        bool ok = true;
        const int p[3] = {x, y, z};
        for (int a = 0; a < 3 && ok; ++a)
          for (int d : {-1, 1}) {
            int q[3] = {p[0], p[1], p[2]};
            q[a] += d;
            if (q[a] < 0 || q[a] >= n) continue;
            if (c.straddle[c.voxel(q[0], q[1], q[2])]) ok = false;
          }
        r.clear[v] = ok;
      }
  return r;
}

// Deepest cell of a mask on an n x n facet grid, by 4-neighbor distance from
// cells outside the mask and from outside the facet. Ties go to the lowest
// index.
Cell deepest_cell(const std::vector<std::uint8_t>& mask, int n) {
  std::vector<int> dist(mask.size(), -1);
  std::deque<int> queue;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int k = i * n + j;
      if (!mask[static_cast<std::size_t>(k)]) {
        dist[static_cast<std::size_t>(k)] = 0;
        queue.push_back(k);
      } else if (i == 0 || j == 0 || i == n - 1 || j == n - 1) {
        dist[static_cast<std::size_t>(k)] = 1;
        queue.push_back(k);
      }
    }
  while (!queue.empty()) {
    const int k = queue.front();
    queue.pop_front();
    const int i = k / n, j = k % n;
    const int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
    for (const auto& q : nb) {
      if (q[0] < 0 || q[1] < 0 || q[0] >= n || q[1] >= n) continue;
      const int w = q[0] * n + q[1];
      if (dist[static_cast<std::size_t>(w)] >= 0) continue;
      dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(k)] + 1;
      queue.push_back(w);
    }
  }
  int best = -1;
  for (int k = 0; k < n * n; ++k)
    if (mask[static_cast<std::size_t>(k)] &&
        (best < 0 || dist[static_cast<std::size_t>(k)] > dist[static_cast<std::size_t>(best)]))
      best = k;
  return {best / n, best % n};
}

// Endpoint cell on the facet between k (high side) and k + e_axis.
Cell shared_cell(const Routed* lo, const Routed* hi, int axis, int n, const Index& k) {
  const std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<std::uint8_t> u(cells, 1), clear(cells, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t f = static_cast<std::size_t>(i * n + j);
      if (lo) {
        const std::size_t v = layer_voxel(*lo->data, axis, 1, i, j);
        u[f] &= lo->in_u[v];
        clear[f] &= lo->clear[v];
      }
      if (hi) {
        const std::size_t v = layer_voxel(*hi->data, axis, 0, i, j);
        u[f] &= hi->in_u[v];
        clear[f] &= hi->clear[v];
      }
    }
  if (std::none_of(u.begin(), u.end(), [](std::uint8_t b) { return b != 0; }))
    throw FalsificationError("build_crosses: good components of cubes (" + std::to_string(k[0]) + ", " +
                             std::to_string(k[1]) + ", " + std::to_string(k[2]) + ") and its +" +
                             std::to_string(axis) + " neighbor do not overlap on the shared facet");
  if (std::none_of(clear.begin(), clear.end(), [](std::uint8_t b) { return b != 0; })) throw RoutingFailure{};
  return deepest_cell(clear, n);
}

Vec3 facet_point(const CubeDecomposition& dec, const Index& k, int facet, const Cell& cell, int n) {
  // Every coordinate comes from a lattice plane index, so both cubes sharing
  // the facet produce bit-identical points.
  const int a = facet / 2, b = (a + 1) % 3, c = (a + 2) % 3;
  auto plane = [&](int axis, int j) { return dec.origin[axis] + dec.side * j; };
  const double h = dec.side / n;
  Vec3 p;
  p[a] = plane(a, k[static_cast<std::size_t>(a)] + facet % 2);
  for (int x : {b, c}) {
    const double lo = plane(x, k[static_cast<std::size_t>(x)]);
    p[x] = cell[0] < 0 ? lo + 0.5 * dec.side : lo + (cell[x == b ? 0 : 1] + 0.5) * h;
  }
  return p;
}

std::array<int, 3> unpack(const CubeData& c, std::size_t v) {
  const auto n = static_cast<std::size_t>(c.res);
  return {static_cast<int>(v / (n * n)), static_cast<int>(v / n % n), static_cast<int>(v % n)};
}

// Sequential BFS from the center with node removal. Returns false if some
// facet cannot be reached.
bool route(const Routed& r, Cross& cross, const std::array<int, kFacets>& order) {
  const CubeData& c = *r.data;
  const int n = c.res;
  std::vector<std::uint8_t> blocked(r.clear.size(), 0);
  for (std::size_t v = 0; v < blocked.size(); ++v) blocked[v] = !r.clear[v];
  std::array<std::size_t, kFacets> target{};
  for (int f = 0; f < kFacets; ++f) {
    const auto& cell = cross.endpoint_cells[static_cast<std::size_t>(f)];
    target[static_cast<std::size_t>(f)] = layer_voxel(c, f / 2, f % 2, cell[0], cell[1]);
  }
  const std::size_t center = c.voxel(cross.center_voxel[0], cross.center_voxel[1], cross.center_voxel[2]);
  for (auto t : target) {
    if (t == center || blocked[t]) return false;
    blocked[t] = 1;
  }
  for (std::size_t a = 0; a < target.size(); ++a)
    for (std::size_t b = a + 1; b < target.size(); ++b)
      if (target[a] == target[b]) return false;
  blocked[center] = 1;

  std::vector<std::int64_t> parent(r.clear.size());
  for (int f : order) {
    const std::size_t goal = target[static_cast<std::size_t>(f)];
    std::fill(parent.begin(), parent.end(), -1);
    parent[center] = static_cast<std::int64_t>(center);
    std::deque<std::size_t> queue{center};
    bool found = false;
    while (!queue.empty() && !found) {
      const std::size_t v = queue.front();
      queue.pop_front();
      const auto p = unpack(c, v);
      for (int a = 0; a < 3 && !found; ++a)
        for (int d : {-1, 1}) {
          auto q = p;
          q[static_cast<std::size_t>(a)] += d;
          if (q[static_cast<std::size_t>(a)] < 0 || q[static_cast<std::size_t>(a)] >= n) continue;
          const std::size_t w = c.voxel(q[0], q[1], q[2]);
          if (parent[w] >= 0 || (blocked[w] && w != goal)) continue;
          parent[w] = static_cast<std::int64_t>(v);
          if (w == goal) {
            found = true;
            break;
          }
          queue.push_back(w);
        }
    }
    if (!found) return false;
    std::vector<std::size_t> chain;
    for (std::size_t v = goal; v != center; v = static_cast<std::size_t>(parent[v])) chain.push_back(v);
    chain.push_back(center);
    std::reverse(chain.begin(), chain.end());
    auto& vox = cross.voxels[static_cast<std::size_t>(f)];
    auto& path = cross.paths[static_cast<std::size_t>(f)];
    vox.clear();
    path.clear();
    for (std::size_t v : chain) {
      const auto q = unpack(c, v);
      vox.push_back(q);
      path.push_back(c.voxel_center(q[0], q[1], q[2]));
      blocked[v] = 1;
    }
    path.push_back(cross.endpoints[static_cast<std::size_t>(f)]);
  }
  return true;
}

std::size_t deepest_voxel(const Routed& r) {
  const CubeData& c = *r.data;
  const int n = c.res;
  std::vector<int> depth(r.clear.size(), -1);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < r.clear.size(); ++v) {
    const auto p = unpack(c, v);
    const bool border = std::any_of(p.begin(), p.end(), [&](int x) { return x == 0 || x == n - 1; });
    if (!r.clear[v]) {
      depth[v] = 0;
      queue.push_back(v);
    } else if (border) {
      depth[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    const auto p = unpack(c, v);
    for (int a = 0; a < 3; ++a)
      for (int d : {-1, 1}) {
        auto q = p;
        q[static_cast<std::size_t>(a)] += d;
        if (q[static_cast<std::size_t>(a)] < 0 || q[static_cast<std::size_t>(a)] >= n) continue;
        const std::size_t w = c.voxel(q[0], q[1], q[2]);
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        queue.push_back(w);
      }
  }
  std::size_t best = 0;
  for (std::size_t v = 1; v < depth.size(); ++v)
    if (depth[v] > depth[best]) best = v;
  if (!r.clear[best]) throw RoutingFailure{};
  return best;
}

CrossSet attempt(const CubeDecomposition& dec, const std::vector<CubeData>& cubes, int res) {
  std::map<Index, Routed> occupied;
  std::vector<const CubeData*> list;
  for (const auto& c : cubes)
    if (!c.mesh.empty()) list.push_back(&c);
  std::vector<Routed> prepared(list.size());
  parallel_for(list.size(), [&](std::size_t i) { prepared[i] = prepare(*list[i]); });
  for (std::size_t i = 0; i < list.size(); ++i) occupied.emplace(list[i]->index, std::move(prepared[i]));

  std::set<Index> all;
  for (const auto& c : cubes) {
    all.insert(c.index);
    for (int a = 0; a < 3; ++a)
      for (int d : {-1, 1}) all.insert(neighbor(c.index, a, d));
  }
  auto routed = [&](const Index& k) -> const Routed* {
    const auto it = occupied.find(k);
    return it == occupied.end() ? nullptr : &it->second;
  };

  CrossSet out;
  out.voxel_res = res;
  for (const auto& k : all) {
    Cross cross;
    cross.cube = k;
    cross.res = res;
    const Routed* self = routed(k);
    cross.trivial = self == nullptr;
    const Box3 box = cube_box(dec, k);
    for (int f = 0; f < kFacets; ++f) {
      const int a = f / 2, side = f % 2;
      const Index other = neighbor(k, a, side == 0 ? -1 : 1);
      const Routed* nb = routed(other);
      Cell cell{-1, -1};
      if (self || nb) {
        const Index lo_index = side == 0 ? other : k;
        cell = side == 0 ? shared_cell(nb, self, a, res, lo_index) : shared_cell(self, nb, a, res, lo_index);
      }
      cross.endpoint_cells[static_cast<std::size_t>(f)] = cell;
      cross.endpoints[static_cast<std::size_t>(f)] = facet_point(dec, k, f, cell, res);
    }
    if (cross.trivial) {
      cross.center = 0.5 * (box.lo + box.hi);
      for (int f = 0; f < kFacets; ++f)
        cross.paths[static_cast<std::size_t>(f)] = {cross.center, cross.endpoints[static_cast<std::size_t>(f)]};
    } else {
      cross.center_voxel = unpack(*self->data, deepest_voxel(*self));
      cross.center = self->data->voxel_center(cross.center_voxel[0], cross.center_voxel[1], cross.center_voxel[2]);
      std::array<int, kFacets> order{0, 1, 2, 3, 4, 5};
      bool ok = false;
      for (int rot = 0; rot < kFacets && !ok; ++rot) {
        ok = route(*self, cross, order);
        std::rotate(order.begin(), order.begin() + 1, order.end());
      }
      if (!ok) throw RoutingFailure{};
    }
    out.crosses.push_back(std::move(cross));
  }
  return out;
}

}  // namespace

CrossSet build_crosses(const CubeDecomposition& dec) {
  int refinements = 0;
  for (int res = dec.voxel_res; res <= kMaxCrossRes; res *= 2, ++refinements) {
    std::vector<CubeData> cubes;
    if (res == dec.voxel_res) {
      cubes = dec.cubes;
    } else {
      cubes.resize(dec.cubes.size());
      parallel_for(cubes.size(), [&](std::size_t i) {
        const auto& c = dec.cubes[i];
        cubes[i] = analyze_cube(c.mesh, c.index, c.box, res);
      });
    }
    try {
      auto out = attempt(dec, cubes, res);
      out.refinements = refinements;
      return out;
    } catch (const RoutingFailure&) {
    }
  }
  throw SearchExhausted("build_crosses: no disjoint routing up to voxel resolution " +
                        std::to_string(kMaxCrossRes));
}

}  // namespace sepwidth::hyperwidth
