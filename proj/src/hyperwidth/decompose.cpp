#include "sepwidth/hyperwidth/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"
#include "sepwidth/common/parallel.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/common/tolerances.hpp"
#include "sepwidth/geom/bvh.hpp"
#include "sepwidth/geom/clip.hpp"
#include "sepwidth/geom/intersect.hpp"

namespace sepwidth::hyperwidth {

using geom::Triangle;
using geom::TriMesh;

bool triangle_box_overlap(const Triangle& t, const Box3& box) {
  Vec3 c, e;
  for (int k = 0; k < 3; ++k) {
    c[k] = 0.5 * (box.lo[k] + box.hi[k]);
    e[k] = 0.5 * (box.hi[k] - box.lo[k]);
  }
  const Vec3 v[3] = {t.a - c, t.b - c, t.c - c};
  // Box face normals.
  for (int k = 0; k < 3; ++k) {
    const double lo = std::min({v[0][k], v[1][k], v[2][k]});
    const double hi = std::max({v[0][k], v[1][k], v[2][k]});
    if (lo > e[k] || hi < -e[k]) return false;
  }
  // Triangle normal.
  const Vec3 n = cross(v[1] - v[0], v[2] - v[0]);
  const double r = e.x * std::abs(n.x) + e.y * std::abs(n.y) + e.z * std::abs(n.z);
  if (std::abs(dot(n, v[0])) > r) return false;
  // Edge cross products.
  const Vec3 edges[3] = {v[1] - v[0], v[2] - v[1], v[0] - v[2]};
  for (const auto& f : edges) {
    for (int k = 0; k < 3; ++k) {
      Vec3 u;
      u[k] = 1.0;
      const Vec3 a = cross(u, f);
      const double p0 = dot(a, v[0]), p1 = dot(a, v[1]), p2 = dot(a, v[2]);
      const double rad = e.x * std::abs(a.x) + e.y * std::abs(a.y) + e.z * std::abs(a.z);
      if (std::min({p0, p1, p2}) > rad || std::max({p0, p1, p2}) < -rad) return false;
    }
  }
  return true;
}

Vec3 CubeData::voxel_center(int x, int y, int z) const {
  const double h = voxel_side();
  return {box.lo.x + (x + 0.5) * h, box.lo.y + (y + 0.5) * h, box.lo.z + (z + 0.5) * h};
}

bool CubeData::edge_blocked(const std::array<int, 3>& v, int axis, int piece) const {
  const int b = (axis + 1) % 3, c = (axis + 2) % 3;
  const auto& line = lines[static_cast<std::size_t>(axis)]
                          [static_cast<std::size_t>(v[static_cast<std::size_t>(b)] * res + v[static_cast<std::size_t>(c)])];
  if (line.empty()) return false;
  const double h = voxel_side();
  const double lo = box.lo[axis] + (v[static_cast<std::size_t>(axis)] + 0.5) * h;
  const double hi = lo + h;
  auto it = std::lower_bound(line.begin(), line.end(), lo,
                             [](const LineCrossing& x, double p) { return x.pos < p; });
  for (; it != line.end() && it->pos < hi; ++it)
    if (piece < 0 || it->piece == piece) return true;
  return false;
}

const CubeData* CubeDecomposition::find(const std::array<int, 3>& index) const {
  const auto it = std::lower_bound(cubes.begin(), cubes.end(), index,
                                   [](const CubeData& c, const std::array<int, 3>& k) { return c.index < k; });
  return it != cubes.end() && it->index == index ? &*it : nullptr;
}

namespace {

// Edge-connected components of the triangles.
std::vector<int> triangle_components(const TriMesh& mesh, int& count) {
  std::map<std::pair<int, int>, std::vector<int>> edges;
  for (std::size_t t = 0; t < mesh.size(); ++t)
    for (int e = 0; e < 3; ++e) {
      int a = mesh.triangles[t][static_cast<std::size_t>(e)];
      int b = mesh.triangles[t][static_cast<std::size_t>((e + 1) % 3)];
      if (a > b) std::swap(a, b);
      edges[{a, b}].push_back(static_cast<int>(t));
    }
  std::vector<std::vector<int>> adj(mesh.size());
  for (const auto& [key, tris] : edges)
    for (std::size_t i = 0; i < tris.size(); ++i)
      for (std::size_t j = i + 1; j < tris.size(); ++j) {
        adj[static_cast<std::size_t>(tris[i])].push_back(tris[j]);
        adj[static_cast<std::size_t>(tris[j])].push_back(tris[i]);
      }
  std::vector<int> label(mesh.size(), -1);
  count = 0;
  for (std::size_t s = 0; s < mesh.size(); ++s) {
    if (label[s] >= 0) continue;
    std::deque<int> queue{static_cast<int>(s)};
    label[s] = count;
    while (!queue.empty()) {
      const int t = queue.front();
      queue.pop_front();
      for (int u : adj[static_cast<std::size_t>(t)])
        if (label[static_cast<std::size_t>(u)] < 0) {
          label[static_cast<std::size_t>(u)] = count;
          queue.push_back(u);
        }
    }
    ++count;
  }
  return label;
}

// Voxel components over edges not blocked by `piece` (any piece if < 0).
std::vector<int> voxel_components(const CubeData& cube, int piece, int& count) {
  const int r = cube.res;
  const std::size_t total = static_cast<std::size_t>(r) * r * r;
  std::vector<int> label(total, -1);
  count = 0;
  std::deque<std::array<int, 3>> queue;
  for (int x = 0; x < r; ++x)
    for (int y = 0; y < r; ++y)
      for (int z = 0; z < r; ++z) {
        if (label[cube.voxel(x, y, z)] >= 0) continue;
        label[cube.voxel(x, y, z)] = count;
        queue.push_back({x, y, z});
        while (!queue.empty()) {
          const auto v = queue.front();
          queue.pop_front();
          for (int a = 0; a < 3; ++a) {
            for (int dir : {-1, 1}) {
              auto w = v;
              w[static_cast<std::size_t>(a)] += dir;
              if (w[static_cast<std::size_t>(a)] < 0 || w[static_cast<std::size_t>(a)] >= r) continue;
              const std::size_t wi = cube.voxel(w[0], w[1], w[2]);
              if (label[wi] >= 0) continue;
              if (cube.edge_blocked(dir > 0 ? v : w, a, piece)) continue;
              label[wi] = count;
              queue.push_back(w);
            }
          }
        }
        ++count;
      }
  return label;
}

}  // namespace

CubeData analyze_cube(const TriMesh& piece_mesh, const std::array<int, 3>& index, const Box3& box,
                      int res) {
  if (res < 2) throw PreconditionError("analyze_cube: voxel resolution must be at least 2");
  CubeData cube;
  cube.index = index;
  cube.box = box;
  cube.side = box.hi.x - box.lo.x;
  cube.res = res;
  cube.mesh = piece_mesh;
  cube.area = geom::mesh_area(piece_mesh);
  const double h = cube.voxel_side();
  const std::size_t total = static_cast<std::size_t>(res) * res * res;

  int piece_count = 0;
  const auto piece_of = triangle_components(piece_mesh, piece_count);
  cube.pieces.resize(static_cast<std::size_t>(piece_count));
  for (std::size_t t = 0; t < piece_mesh.size(); ++t) {
    auto& p = cube.pieces[static_cast<std::size_t>(piece_of[t])];
    p.triangles.push_back(static_cast<int>(t));
    p.area += piece_mesh.triangle(t).area();
  }

  // Crossings along voxel-center lines.
  for (int a = 0; a < 3; ++a) cube.lines[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(res) * res, {});
  if (!piece_mesh.empty()) {
    const geom::MeshBvh bvh(piece_mesh);
    for (int a = 0; a < 3; ++a) {
      const int b = (a + 1) % 3, c = (a + 2) % 3;
      for (int i = 0; i < res; ++i)
        for (int j = 0; j < res; ++j) {
          Vec3 p, q;
          p[b] = q[b] = box.lo[b] + (i + 0.5) * h;
          p[c] = q[c] = box.lo[c] + (j + 0.5) * h;
          p[a] = box.lo[a] - h;
          q[a] = box.hi[a] + h;
          const auto hits = geom::segment_mesh_hits(geom::Segment{p, q}, bvh);
          if (hits.degenerate) throw DegeneratePose("analyze_cube: voxel line grazes the mesh");
          auto& line = cube.lines[static_cast<std::size_t>(a)][static_cast<std::size_t>(i * res + j)];
          for (const auto& hit : hits.hits)
            line.push_back({hit.point[a], piece_of[static_cast<std::size_t>(hit.triangle)]});
          std::sort(line.begin(), line.end(), [](const LineCrossing& x, const LineCrossing& y) {
            return x.pos < y.pos || (x.pos == y.pos && x.piece < y.piece);
          });
        }
    }
  }

  // Voxels meeting the mesh, overall and per piece.
  cube.straddle.assign(total, 0);
  std::vector<int> stamp(total, -1);
  for (int pi = 0; pi < piece_count; ++pi) {
    std::size_t count = 0;
    for (int t : cube.pieces[static_cast<std::size_t>(pi)].triangles) {
      const Triangle tri = piece_mesh.triangle(static_cast<std::size_t>(t));
      const Box3 tb = tri.bounds();
      int lo[3], hi[3];
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::clamp(static_cast<int>(std::floor((tb.lo[k] - box.lo[k]) / h)), 0, res - 1);
        hi[k] = std::clamp(static_cast<int>(std::floor((tb.hi[k] - box.lo[k]) / h)), 0, res - 1);
      }
      for (int x = lo[0]; x <= hi[0]; ++x)
        for (int y = lo[1]; y <= hi[1]; ++y)
          for (int z = lo[2]; z <= hi[2]; ++z) {
            const std::size_t v = cube.voxel(x, y, z);
            if (stamp[v] == pi) continue;
            Box3 vb;
            vb.lo = {box.lo.x + x * h, box.lo.y + y * h, box.lo.z + z * h};
            vb.hi = vb.lo + Vec3{h, h, h};
            if (!triangle_box_overlap(tri, vb)) continue;
            stamp[v] = pi;
            cube.straddle[v] = 1;
            ++count;
          }
    }
    cube.pieces[static_cast<std::size_t>(pi)].straddle_volume = static_cast<double>(count) * h * h * h;
  }

  cube.component = voxel_components(cube, -1, cube.components);

  // Deepest voxel, for the tie rule.
  std::vector<int> depth(total, -1);
  {
    std::deque<std::size_t> queue;
    for (std::size_t v = 0; v < total; ++v)
      if (cube.straddle[v]) {
        depth[v] = 0;
        queue.push_back(v);
      }
    const std::size_t strides[3] = {static_cast<std::size_t>(res) * res, static_cast<std::size_t>(res), 1};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (int a = 0; a < 3; ++a) {
        const int coord = static_cast<int>(v / strides[a] % static_cast<std::size_t>(res));
        for (int dir : {-1, 1}) {
          if (coord + dir < 0 || coord + dir >= res) continue;
          const std::size_t w = dir > 0 ? v + strides[a] : v - strides[a];
          if (depth[w] >= 0) continue;
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        }
      }
    }
  }
  const std::size_t deepest =
      static_cast<std::size_t>(std::max_element(depth.begin(), depth.end()) - depth.begin());

  for (int pi = 0; pi < piece_count; ++pi) {
    auto& piece = cube.pieces[static_cast<std::size_t>(pi)];
    int count = 0;
    const auto label = voxel_components(cube, pi, count);
    std::vector<std::size_t> size(static_cast<std::size_t>(count), 0);
    for (int l : label) ++size[static_cast<std::size_t>(l)];
    int big = 0;
    for (int c = 1; c < count; ++c)
      if (size[static_cast<std::size_t>(c)] > size[static_cast<std::size_t>(big)]) big = c;
    for (int c = 0; c < count; ++c) {
      if (c == big || size[static_cast<std::size_t>(c)] != size[static_cast<std::size_t>(big)]) continue;
      // Equal halves: V_i is the side without the deepest voxel.
      piece.tie = true;
      if (label[deepest] == c) big = c;
    }
    piece.small_side.assign(total, 0);
    std::size_t small = 0;
    for (std::size_t v = 0; v < total; ++v)
      if (label[v] != big) {
        piece.small_side[v] = 1;
        ++small;
      }
    piece.volume = static_cast<double>(small) * h * h * h;
    for (int a = 0; a < 3; ++a)
      for (int side = 0; side < 2; ++side) {
        const int layer = side == 0 ? 0 : res - 1;
        std::size_t n = 0;
        for (int i = 0; i < res; ++i)
          for (int j = 0; j < res; ++j) {
            std::array<int, 3> v{};
            v[static_cast<std::size_t>(a)] = layer;
            v[static_cast<std::size_t>((a + 1) % 3)] = i;
            v[static_cast<std::size_t>((a + 2) % 3)] = j;
            n += piece.small_side[cube.voxel(v[0], v[1], v[2])];
          }
        piece.facet_area[static_cast<std::size_t>(2 * a + side)] = static_cast<double>(n) * h * h;
      }
  }
  return cube;
}

CubeDecomposition decompose(const TriMesh& mesh, double side, int voxel_res, std::uint64_t seed) {
  if (!(side > 0.0)) throw PreconditionError("decompose: lattice side must be positive");
  if (voxel_res < 2) throw PreconditionError("decompose: voxel resolution must be at least 2");
  CubeDecomposition dec;
  dec.side = side;
  dec.voxel_res = voxel_res;
  if (mesh.empty()) {
    Box3 box;
    box.lo = {};
    box.hi = {side, side, side};
    dec.cubes.push_back(analyze_cube(TriMesh{}, {0, 0, 0}, box, voxel_res));
    return dec;
  }
  mesh.validate();
  if (!geom::is_closed(mesh)) throw PreconditionError("decompose: mesh is not closed");
  dec.area = geom::mesh_area(mesh);

  Rng rng(seed);
  for (int attempt = 0; attempt <= tol::kJitterRetries; ++attempt) {
    dec.jitter_attempts = attempt + 1;
    const double j = tol::kJitter * side;
    dec.origin = {rng.uniform(0.0, j), rng.uniform(0.0, j), rng.uniform(0.0, j)};
    const auto split = geom::split_by_lattice(mesh, dec.origin, side);
    if (split.min_plane_distance <= 1e-9 * side) continue;
    std::map<std::array<int, 3>, std::vector<int>> cells;
    for (std::size_t t = 0; t < split.cell.size(); ++t) cells[split.cell[t]].push_back(static_cast<int>(t));
    std::vector<std::pair<std::array<int, 3>, std::vector<int>>> list(cells.begin(), cells.end());
    std::vector<CubeData> cubes(list.size());
    std::vector<char> degenerate(list.size(), 0);
    parallel_for(list.size(), [&](std::size_t i) {
      const auto& k = list[i].first;
      Box3 box;
      for (int a = 0; a < 3; ++a) {
        box.lo[a] = dec.origin[a] + side * k[static_cast<std::size_t>(a)];
        box.hi[a] = box.lo[a] + side;
      }
      try {
        cubes[i] = analyze_cube(geom::submesh(split.mesh, list[i].second), k, box, voxel_res);
      } catch (const DegeneratePose&) {
        degenerate[i] = 1;
      }
    });
    if (std::any_of(degenerate.begin(), degenerate.end(), [](char c) { return c != 0; })) continue;
    dec.cubes = std::move(cubes);
    return dec;
  }
  throw DegeneratePose("decompose: no transversal lattice after " +
                       std::to_string(tol::kJitterRetries) + " jitters");
}

GoodComponent good_component(const CubeData& cube) {
  const double l = cube.side, l2 = l * l, l3 = l2 * l;
  if (!(cube.area < l2 / 3.0))
    throw PreconditionError("good_component: area " + format_double(cube.area / l2) +
                            " l^2 is not below l^2/3");
  const int r = cube.res;
  const std::size_t total = static_cast<std::size_t>(r) * r * r;
  GoodComponent out;
  out.in_u.assign(total, 1);
  for (const auto& p : cube.pieces)
    for (std::size_t v = 0; v < total; ++v)
      if (p.small_side[v]) out.in_u[v] = 0;

  out.min_facet_fraction = 1.0;
  for (int a = 0; a < 3; ++a)
    for (int side = 0; side < 2; ++side) {
      const int layer = side == 0 ? 0 : r - 1;
      std::size_t in = 0, err = 0;
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          std::array<int, 3> v{};
          v[static_cast<std::size_t>(a)] = layer;
          v[static_cast<std::size_t>((a + 1) % 3)] = i;
          v[static_cast<std::size_t>((a + 2) % 3)] = j;
          const std::size_t idx = cube.voxel(v[0], v[1], v[2]);
          in += out.in_u[idx];
          err += cube.straddle[idx];
        }
      const std::size_t f = static_cast<std::size_t>(2 * a + side);
      out.facet_fraction[f] = static_cast<double>(in) / (static_cast<double>(r) * r);
      out.facet_error[f] = static_cast<double>(err) / (static_cast<double>(r) * r);
      out.min_facet_fraction = std::min(out.min_facet_fraction, out.facet_fraction[f]);
    }

  std::vector<char> seen(static_cast<std::size_t>(cube.components), 0);
  for (std::size_t v = 0; v < total; ++v)
    if (out.in_u[v] && !seen[static_cast<std::size_t>(cube.component[v])]) {
      seen[static_cast<std::size_t>(cube.component[v])] = 1;
      ++out.u_components;
    }

  for (const auto& p : cube.pieces) {
    IsoperimetricCheck c;
    c.area = p.area / l2;
    c.volume = p.volume / l3;
    const double e = p.straddle_volume / l3;
    const double lo = std::max(0.0, c.volume - e), hi = std::min(1.0, c.volume + e);
    const double lower = std::min(4.0 * lo * (1.0 - lo), 4.0 * hi * (1.0 - hi));
    const double nominal = 4.0 * c.volume * (1.0 - c.volume);
    c.delta = nominal > 0.0 ? 1.0 - lower / nominal : 0.0;
    c.bound = lower;
    c.ok = c.area >= c.bound;
    out.delta_grid = std::max(out.delta_grid, c.delta);
    out.isoperimetric_ok = out.isoperimetric_ok && c.ok;
    out.isoperimetric.push_back(c);
  }

  for (int f = 0; f < kFacets; ++f)
    if (!(out.facet_fraction[static_cast<std::size_t>(f)] > 0.5))
      throw FalsificationError("good_component: facet " + std::to_string(f) + " of cube (" +
                               std::to_string(cube.index[0]) + ", " + std::to_string(cube.index[1]) +
                               ", " + std::to_string(cube.index[2]) + ") has U area " +
                               format_double(out.facet_fraction[static_cast<std::size_t>(f)]) +
                               " l^2 (voxel error " +
                               format_double(out.facet_error[static_cast<std::size_t>(f)]) + ")");
  return out;
}

}  // namespace sepwidth::hyperwidth
