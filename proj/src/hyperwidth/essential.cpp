#include "sepwidth/hyperwidth/essential.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <unordered_map>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/parallel.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/common/tolerances.hpp"
#include "sepwidth/geom/clip.hpp"

namespace sepwidth::hyperwidth {

namespace {

struct EdgeTable {
  std::vector<std::pair<int, int>> ends;           // a < b
  std::vector<std::array<int, 2>> faces;           // -1 if missing
  std::vector<std::array<int, 3>> face_edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // vertex -> (neighbor, edge)

  int find(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const auto& [w, e] : adj[static_cast<std::size_t>(a)])
      if (w == b) return e;
    return -1;
  }
};

EdgeTable edge_table(const geom::TriMesh& m) {
  EdgeTable t;
  t.adj.resize(m.vertices.size());
  t.face_edges.resize(m.size());
  std::map<std::pair<int, int>, int> ids;
  for (std::size_t f = 0; f < m.size(); ++f)
    for (int k = 0; k < 3; ++k) {
      int a = m.triangles[f][static_cast<std::size_t>(k)];
      int b = m.triangles[f][static_cast<std::size_t>((k + 1) % 3)];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = ids.try_emplace({a, b}, static_cast<int>(t.ends.size()));
      if (inserted) {
        t.ends.push_back({a, b});
        t.faces.push_back({-1, -1});
        t.adj[static_cast<std::size_t>(a)].push_back({b, it->second});
        t.adj[static_cast<std::size_t>(b)].push_back({a, it->second});
      }
      auto& fs = t.faces[static_cast<std::size_t>(it->second)];
      (fs[0] < 0 ? fs[0] : fs[1]) = static_cast<int>(f);
      t.face_edges[f][static_cast<std::size_t>(k)] = it->second;
    }
  // Vertex adjacency keyed on the smaller endpoint for find().
  for (auto& list : t.adj) std::sort(list.begin(), list.end());
  return t;
}

using Bits = std::vector<std::uint64_t>;

void xor_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

bool any(const Bits& a) {
  return std::any_of(a.begin(), a.end(), [](std::uint64_t w) { return w != 0; });
}

// Tree-cotree cohomology basis: omega[e] holds, per basis element, whether
// edge e is in its support.
struct Cohomology {
  int betti1 = 0;
  int components = 0;
  std::vector<Bits> omega;
};

Cohomology cohomology(const geom::TriMesh& m, const EdgeTable& t) {
  const std::size_t nv = m.vertices.size(), ne = t.ends.size(), nf = m.size();
  std::vector<char> used_vertex(nv, 0);
  for (const auto& tri : m.triangles)
    for (int v : tri) used_vertex[static_cast<std::size_t>(v)] = 1;

  std::vector<char> tree(ne, 0), cotree(ne, 0);
  std::vector<char> seen(nv, 0);
  Cohomology out;
  for (std::size_t s = 0; s < nv; ++s) {
    if (!used_vertex[s] || seen[s]) continue;
    ++out.components;
    seen[s] = 1;
    std::deque<int> queue{static_cast<int>(s)};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const auto& [w, e] : t.adj[static_cast<std::size_t>(v)])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          tree[static_cast<std::size_t>(e)] = 1;
          queue.push_back(w);
        }
    }
  }

  // Dual spanning forest over edges not in the primal tree.
  std::vector<int> parent_face(nf, -1), parent_edge(nf, -1), depth(nf, -1);
  for (std::size_t s = 0; s < nf; ++s) {
    if (depth[s] >= 0) continue;
    depth[s] = 0;
    std::deque<int> queue{static_cast<int>(s)};
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      for (int e : t.face_edges[static_cast<std::size_t>(f)]) {
        if (tree[static_cast<std::size_t>(e)]) continue;
        const auto& fs = t.faces[static_cast<std::size_t>(e)];
        const int g = fs[0] == f ? fs[1] : fs[0];
        if (g < 0 || depth[static_cast<std::size_t>(g)] >= 0) continue;
        depth[static_cast<std::size_t>(g)] = depth[static_cast<std::size_t>(f)] + 1;
        parent_face[static_cast<std::size_t>(g)] = f;
        parent_edge[static_cast<std::size_t>(g)] = e;
        cotree[static_cast<std::size_t>(e)] = 1;
        queue.push_back(g);
      }
    }
  }

  std::vector<int> leftover;
  for (std::size_t e = 0; e < ne; ++e)
    if (!tree[e] && !cotree[e]) leftover.push_back(static_cast<int>(e));
  out.betti1 = static_cast<int>(leftover.size());
  const std::size_t words = (leftover.size() + 63) / 64;
  out.omega.assign(ne, Bits(words, 0));
  for (std::size_t i = 0; i < leftover.size(); ++i) {
    const std::uint64_t bit = 1ULL << (i % 64);
    const std::size_t word = i / 64;
    const int e = leftover[i];
    out.omega[static_cast<std::size_t>(e)][word] ^= bit;
    int f = t.faces[static_cast<std::size_t>(e)][0], g = t.faces[static_cast<std::size_t>(e)][1];
    while (f != g) {
      int& deeper = depth[static_cast<std::size_t>(f)] >= depth[static_cast<std::size_t>(g)] ? f : g;
      out.omega[static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(deeper)])][word] ^= bit;
      deeper = parent_face[static_cast<std::size_t>(deeper)];
    }
  }
  return out;
}

struct BlockHit {
  std::vector<int> vertices;  // closed path, first != last
  std::vector<int> edges;
  Bits pairing;
};

// First graph cycle of the submesh (triangles `tris`) with nonzero pairing.
std::optional<BlockHit> block_cycle(const geom::TriMesh& m, const EdgeTable& t, const Cohomology& h,
                                    const std::vector<int>& tris) {
  std::unordered_map<int, int> local;
  std::vector<int> verts;
  std::vector<int> edges;
  std::unordered_map<int, char> in_block;
  for (int f : tris) {
    for (int v : m.triangles[static_cast<std::size_t>(f)])
      if (local.try_emplace(v, static_cast<int>(verts.size())).second) verts.push_back(v);
    for (int e : t.face_edges[static_cast<std::size_t>(f)])
      if (in_block.try_emplace(e, 1).second) edges.push_back(e);
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::vector<std::pair<int, int>>> adj(verts.size());
  for (int e : edges) {
    const int a = local[t.ends[static_cast<std::size_t>(e)].first];
    const int b = local[t.ends[static_cast<std::size_t>(e)].second];
    adj[static_cast<std::size_t>(a)].push_back({b, e});
    adj[static_cast<std::size_t>(b)].push_back({a, e});
  }
  const std::size_t words = h.omega.empty() ? 0 : h.omega[0].size();
  std::vector<Bits> phi(verts.size(), Bits(words, 0));
  std::vector<int> parent(verts.size(), -1), parent_edge(verts.size(), -1), depth(verts.size(), -1);
  std::unordered_map<int, char> tree_edges;
  for (std::size_t s = 0; s < verts.size(); ++s) {
    if (depth[s] >= 0) continue;
    depth[s] = 0;
    std::deque<int> queue{static_cast<int>(s)};
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const auto& [w, e] : adj[static_cast<std::size_t>(v)]) {
        if (depth[static_cast<std::size_t>(w)] >= 0) continue;
        depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(v)] + 1;
        parent[static_cast<std::size_t>(w)] = v;
        parent_edge[static_cast<std::size_t>(w)] = e;
        tree_edges[e] = 1;
        phi[static_cast<std::size_t>(w)] = phi[static_cast<std::size_t>(v)];
        xor_into(phi[static_cast<std::size_t>(w)], h.omega[static_cast<std::size_t>(e)]);
        queue.push_back(w);
      }
    }
  }
  for (int e : edges) {
    if (tree_edges.count(e)) continue;
    const int a = local[t.ends[static_cast<std::size_t>(e)].first];
    const int b = local[t.ends[static_cast<std::size_t>(e)].second];
    Bits val = h.omega[static_cast<std::size_t>(e)];
    xor_into(val, phi[static_cast<std::size_t>(a)]);
    xor_into(val, phi[static_cast<std::size_t>(b)]);
    if (!any(val)) continue;
    // Cycle: e, then the tree path from b back to a.
    std::vector<int> up_a, up_b, ea, eb;
    int x = a, y = b;
    while (x != y) {
      if (depth[static_cast<std::size_t>(x)] >= depth[static_cast<std::size_t>(y)]) {
        up_a.push_back(x);
        ea.push_back(parent_edge[static_cast<std::size_t>(x)]);
        x = parent[static_cast<std::size_t>(x)];
      } else {
        up_b.push_back(y);
        eb.push_back(parent_edge[static_cast<std::size_t>(y)]);
        y = parent[static_cast<std::size_t>(y)];
      }
    }
    BlockHit hit;
    hit.pairing = val;
    for (int v : up_a) hit.vertices.push_back(verts[static_cast<std::size_t>(v)]);
    hit.vertices.push_back(verts[static_cast<std::size_t>(x)]);
    for (auto it = up_b.rbegin(); it != up_b.rend(); ++it) hit.vertices.push_back(verts[static_cast<std::size_t>(*it)]);
    hit.edges = ea;
    hit.edges.insert(hit.edges.end(), eb.rbegin(), eb.rend());
    hit.edges.push_back(e);
    return hit;
  }
  return std::nullopt;
}

}  // namespace

int z2_betti1(const geom::TriMesh& mesh) {
  const auto t = edge_table(mesh);
  return cohomology(mesh, t).betti1;
}

bool z2_is_boundary(const geom::TriMesh& mesh, const std::vector<std::pair<int, int>>& edges) {
  const auto t = edge_table(mesh);
  auto column_of = [&](const std::vector<std::pair<int, int>>& list) {
    std::vector<int> col;
    for (const auto& [a, b] : list) {
      const int e = t.find(std::min(a, b), std::max(a, b));
      if (e < 0) throw PreconditionError("z2_is_boundary: pair is not a mesh edge");
      col.push_back(e);
    }
    std::sort(col.begin(), col.end());
    // Repeated edges cancel.
    std::vector<int> out;
    for (std::size_t i = 0; i < col.size();) {
      std::size_t j = i;
      while (j < col.size() && col[j] == col[i]) ++j;
      if ((j - i) % 2 == 1) out.push_back(col[i]);
      i = j;
    }
    return out;
  };
  auto add = [](std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    a = std::move(out);
  };
  // Reduce the columns of ∂2 (lowest row as pivot), then z against them.
  std::vector<std::vector<int>> reduced;
  std::unordered_map<int, std::size_t> pivot;
  for (std::size_t f = 0; f < mesh.size(); ++f) {
    std::vector<int> col(t.face_edges[f].begin(), t.face_edges[f].end());
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      const auto it = pivot.find(col.back());
      if (it == pivot.end()) break;
      add(col, reduced[it->second]);
    }
    if (col.empty()) continue;
    pivot[col.back()] = reduced.size();
    reduced.push_back(std::move(col));
  }
  auto z = column_of(edges);
  while (!z.empty()) {
    const auto it = pivot.find(z.back());
    if (it == pivot.end()) return false;
    add(z, reduced[it->second]);
  }
  return true;
}

EssentialResult essential_curve_in_cube(const geom::TriMesh& mesh, double side, std::uint64_t seed) {
  if (!(side > 0.0)) throw PreconditionError("essential_curve_in_cube: side must be positive");
  if (mesh.empty()) throw PreconditionError("essential_curve_in_cube: empty mesh");
  mesh.validate();
  if (!geom::is_closed(mesh)) throw PreconditionError("essential_curve_in_cube: mesh is not closed");
  EssentialResult out;
  out.euler = geom::euler_characteristic(mesh);

  const double half = 0.5 * side;
  const Box3 bounds = mesh.bounds();
  Rng rng(seed);
  geom::LatticeSplit split;
  Vec3 origin;
  for (int attempt = 0;; ++attempt) {
    if (attempt > tol::kJitterRetries)
      throw DegeneratePose("essential_curve_in_cube: no transversal grid after jitter");
    const double j = tol::kJitter * side;
    origin = bounds.lo - Vec3{rng.uniform(0.5 * j, j), rng.uniform(0.5 * j, j), rng.uniform(0.5 * j, j)};
    split = geom::split_by_lattice(mesh, origin, half);
    if (split.min_plane_distance > 1e-9 * side) break;
  }
  const geom::TriMesh& m = split.mesh;
  out.refined_triangles = m.size();
  if (geom::euler_characteristic(m) != out.euler)
    throw Error("essential_curve_in_cube: refinement changed the Euler characteristic");

  const auto table = edge_table(m);
  const auto h = cohomology(m, table);
  out.betti1 = h.betti1;
  out.components = h.components;
  if (h.betti1 != 2 * h.components - out.euler)
    throw Error("essential_curve_in_cube: tree-cotree count disagrees with the Euler characteristic");
  if (h.betti1 == 0) throw PreconditionError("essential_curve_in_cube: mesh has no first homology");

  // Blocks of 2x2x2 half cells, indexed by their lowest half cell.
  std::map<std::array<int, 3>, std::vector<int>> cells;
  for (std::size_t f = 0; f < split.cell.size(); ++f) cells[split.cell[f]].push_back(static_cast<int>(f));
  std::map<std::array<int, 3>, std::vector<int>> blocks;
  for (const auto& [c, tris] : cells)
    for (int dx = -1; dx <= 0; ++dx)
      for (int dy = -1; dy <= 0; ++dy)
        for (int dz = -1; dz <= 0; ++dz) {
          auto& list = blocks[{c[0] + dx, c[1] + dy, c[2] + dz}];
          list.insert(list.end(), tris.begin(), tris.end());
        }
  std::vector<std::pair<std::array<int, 3>, std::vector<int>>> list(blocks.begin(), blocks.end());
  out.cubes_scanned = list.size();
  std::vector<std::optional<BlockHit>> hits(list.size());
  parallel_for(list.size(), [&](std::size_t i) { hits[i] = block_cycle(m, table, h, list[i].second); });

  for (std::size_t i = 0; i < list.size(); ++i) {
    if (!hits[i]) continue;
    CurveCertificate cert;
    cert.side = side;
    for (int a = 0; a < 3; ++a) {
      cert.cube.lo[a] = origin[a] + half * list[i].first[static_cast<std::size_t>(a)];
      cert.cube.hi[a] = cert.cube.lo[a] + side;
    }
    for (int v : hits[i]->vertices) cert.cycle.push_back(m.vertices[static_cast<std::size_t>(v)]);
    for (int e : hits[i]->edges) cert.edges.push_back(table.ends[static_cast<std::size_t>(e)]);
    for (int k = 0; k < h.betti1; ++k)
      cert.pairing.push_back(static_cast<std::uint8_t>(hits[i]->pairing[static_cast<std::size_t>(k / 64)] >> (k % 64) & 1));
    cert.rank_verified = !z2_is_boundary(m, cert.edges);
    out.certificate = std::move(cert);
    break;
  }
  out.refined = split.mesh;
  return out;
}

}  // namespace sepwidth::hyperwidth
