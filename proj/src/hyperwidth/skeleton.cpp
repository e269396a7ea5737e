#include "sepwidth/hyperwidth/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"
#include "sepwidth/geom/bvh.hpp"
#include "sepwidth/geom/intersect.hpp"

namespace sepwidth::hyperwidth {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr double kPlaneTol = 1e-9;
constexpr int kMaxRefinements = 4;

struct Section {
  Vec3 p, q;
};

// Sections of the lattice-unit mesh by the planes u_axis = k + t. Sets
// `degenerate` if a vertex is within kPlaneTol of a plane.
std::vector<Section> sections(const geom::TriMesh& m, int axis, double t, bool& degenerate,
                              double* length) {
  degenerate = false;
  std::vector<Section> out;
  double total = 0.0;
  for (std::size_t i = 0; i < m.size() && !degenerate; ++i) {
    const geom::Triangle tri = m.triangle(i);
    double lo = std::min({tri.a[axis], tri.b[axis], tri.c[axis]});
    double hi = std::max({tri.a[axis], tri.b[axis], tri.c[axis]});
    for (long k = static_cast<long>(std::ceil(lo - t - kPlaneTol)); k + t <= hi + kPlaneTol; ++k) {
      const double plane = static_cast<double>(k) + t;
      double s[3];
      for (int v = 0; v < 3; ++v) {
        s[v] = tri[v][axis] - plane;
        if (std::abs(s[v]) <= kPlaneTol) degenerate = true;
      }
      if (degenerate) break;
      Vec3 pts[2];
      int n = 0;
      for (int e = 0; e < 3; ++e) {
        const int f = (e + 1) % 3;
        if ((s[e] < 0) != (s[f] < 0)) pts[n++] = lerp(tri[e], tri[f], s[e] / (s[e] - s[f]));
      }
      if (n == 2) {
        out.push_back({pts[0], pts[1]});
        total += norm(pts[1] - pts[0]);
      }
    }
  }
  if (length) *length = total;
  return out;
}

// Crossings of sections with the lines u_axis = m + t. Sets `degenerate` if
// an endpoint is within kPlaneTol of a line.
std::size_t crossings(const std::vector<Section>& secs, int axis, double t, bool& degenerate) {
  std::size_t count = 0;
  for (const auto& s : secs) {
    const double a = std::min(s.p[axis], s.q[axis]) - t;
    const double b = std::max(s.p[axis], s.q[axis]) - t;
    const double fa = std::round(a), fb = std::round(b);
    if (std::abs(a - fa) <= kPlaneTol || std::abs(b - fb) <= kPlaneTol) degenerate = true;
    const double n = std::floor(b) - std::floor(a);
    if (n > 0) count += static_cast<std::size_t>(n);
  }
  return count;
}

double sample(int j, int res) { return (j + kGolden) / res; }

}  // namespace

DualSkeletonT three_plane_T(const geom::TriMesh& mesh, int sweep_res, double l, const Vec3& origin) {
  if (sweep_res < 1) throw PreconditionError("three_plane_T: sweep resolution must be positive");
  if (!(l > 0.0)) throw PreconditionError("three_plane_T: lattice side must be positive");
  DualSkeletonT T;
  T.l = l;
  T.origin = origin;
  const geom::TriMesh m = geom::transformed(mesh, [&](const Vec3& x) { return T.to_lattice(x); });
  const double area = geom::mesh_area(m);
  if (!(area < 1.0 / 3.0))
    throw PreconditionError("three_plane_T: area " + format_double(area) + " l^2 is not below l^2/3");

  int res = sweep_res;
  auto refine = [&](const char* step) {
    if (T.refinements == kMaxRefinements)
      throw SearchExhausted(std::string("three_plane_T: no good ") + step + " offset at sweep resolution " +
                            std::to_string(res));
    ++T.refinements;
    res *= 2;
  };

  std::vector<Section> xs;
  for (;;) {
    int best = -1;
    double best_len = 0.0;
    for (int j = 0; j < res; ++j) {
      bool degenerate = false;
      double len = 0.0;
      sections(m, 0, sample(j, res), degenerate, &len);
      if (degenerate || !(len < 1.0 / 3.0)) continue;
      if (best < 0 || len < best_len) {
        best = j;
        best_len = len;
      }
    }
    if (best >= 0) {
      bool degenerate = false;
      T.t.x = sample(best, res);
      xs = sections(m, 0, T.t.x, degenerate, &T.x_length);
      break;
    }
    refine("x");
  }

  std::vector<Section> ys;
  for (;;) {
    int best = -1;
    double best_len = 0.0;
    for (int j = 0; j < res; ++j) {
      const double t = sample(j, res);
      bool degenerate = false;
      double len = 0.0;
      sections(m, 1, t, degenerate, &len);
      if (degenerate || !(len < 2.0 / 3.0)) continue;
      if (crossings(xs, 1, t, degenerate) != 0 || degenerate) continue;
      if (best < 0 || len < best_len) {
        best = j;
        best_len = len;
      }
    }
    if (best >= 0) {
      bool degenerate = false;
      T.t.y = sample(best, res);
      ys = sections(m, 1, T.t.y, degenerate, &T.y_length);
      T.xy_hits = crossings(xs, 1, T.t.y, degenerate);
      break;
    }
    refine("y");
  }

  for (;;) {
    // Center of the longest run of good samples.
    int run_start = -1, best_start = -1, best_len = 0;
    for (int j = 0; j <= res; ++j) {
      bool good = false;
      if (j < res) {
        const double t = sample(j, res);
        bool degenerate = false;
        sections(m, 2, t, degenerate, nullptr);
        good = !degenerate && crossings(xs, 2, t, degenerate) == 0 && crossings(ys, 2, t, degenerate) == 0 &&
               !degenerate;
      }
      if (good && run_start < 0) run_start = j;
      if (!good && run_start >= 0) {
        if (j - run_start > best_len) {
          best_len = j - run_start;
          best_start = run_start;
        }
        run_start = -1;
      }
    }
    if (best_start >= 0) {
      T.t.z = sample(best_start + (best_len - 1) / 2, res);
      break;
    }
    refine("z");
  }
  T.sweep_res = res;
  T.pair_hits = skeleton_hits(T, mesh, &T.lines_checked);
  return T;
}

std::array<std::size_t, 3> skeleton_hits(const DualSkeletonT& T, const geom::TriMesh& mesh,
                                         std::size_t* lines) {
  std::array<std::size_t, 3> out{};
  if (lines) *lines = 0;
  if (mesh.empty()) return out;
  const geom::MeshBvh bvh(mesh);
  Box3 box;
  for (const auto& v : mesh.vertices) box.extend(T.to_lattice(v));
  // Family f runs along axis `along[f]`; the other two coordinates are fixed.
  const int along[3] = {2, 1, 0};
  for (int f = 0; f < 3; ++f) {
    const int a = along[f], b = (a + 1) % 3, c = (a + 2) % 3;
    for (long i = static_cast<long>(std::floor(box.lo[b] - T.t[b])); i + T.t[b] <= box.hi[b]; ++i)
      for (long j = static_cast<long>(std::floor(box.lo[c] - T.t[c])); j + T.t[c] <= box.hi[c]; ++j) {
        Vec3 p, q;
        p[b] = q[b] = static_cast<double>(i) + T.t[b];
        p[c] = q[c] = static_cast<double>(j) + T.t[c];
        p[a] = box.lo[a] - 1.0;
        q[a] = box.hi[a] + 1.0;
        const auto hits = geom::segment_mesh_hits(geom::Segment{T.from_lattice(p), T.from_lattice(q)}, bvh);
        out[static_cast<std::size_t>(f)] += hits.count() + (hits.degenerate ? 1 : 0);
        if (lines) ++*lines;
      }
  }
  return out;
}

bool in_closed_cube(const DualSkeletonT& T, const std::array<int, 3>& cube, const Vec3& x, double tol) {
  const Vec3 u = T.to_lattice(x);
  for (int a = 0; a < 3; ++a)
    if (u[a] < cube[static_cast<std::size_t>(a)] - tol || u[a] > cube[static_cast<std::size_t>(a)] + 1 + tol)
      return false;
  return true;
}

bool on_one_skeleton(const DualSkeletonT& T, const Vec3& x, double tol) {
  const Vec3 u = T.to_lattice(x);
  int integral = 0;
  for (int a = 0; a < 3; ++a)
    if (std::abs(u[a] - std::round(u[a])) <= tol) ++integral;
  return integral >= 2;
}

Retraction retraction_phi(const DualSkeletonT& T, const Vec3& x) {
  Retraction out;
  Vec3 u = T.to_lattice(x);
  const Vec3 jitter_dir{kGolden, 0.4142135623730951, 0.7320508075688772};
  std::array<int, 3> k{};
  Vec3 c;
  for (;;) {
    for (int a = 0; a < 3; ++a) {
      k[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(u[a]));
      c[a] = k[static_cast<std::size_t>(a)] + T.t[a];
    }
    if (linf(u - c) > kPlaneTol) break;
    if (out.jitters == 5) throw DegeneratePose("retraction_phi: point stays at a T-vertex after jitter");
    ++out.jitters;
    u += (kPlaneTol * 2.0 * out.jitters) * jitter_dir;
  }
  out.cube = k;

  // Stage 1: from c through u to the cube boundary.
  const Vec3 d = u - c;
  double s = std::numeric_limits<double>::infinity();
  int facet_axis = -1;
  for (int a = 0; a < 3; ++a) {
    if (d[a] == 0.0) continue;
    const double bound = d[a] > 0 ? k[static_cast<std::size_t>(a)] + 1.0 : k[static_cast<std::size_t>(a)];
    const double sa = (bound - c[a]) / d[a];
    if (sa < s) {
      s = sa;
      facet_axis = a;
    }
  }
  Vec3 p = c + s * d;
  p[facet_axis] = d[facet_axis] > 0 ? k[static_cast<std::size_t>(facet_axis)] + 1.0
                                    : static_cast<double>(k[static_cast<std::size_t>(facet_axis)]);

  // Stage 2: within the facet, from the T point to the facet boundary.
  const int b = (facet_axis + 1) % 3, cc = (facet_axis + 2) % 3;
  const double e1 = p[b] - c[b], e2 = p[cc] - c[cc];
  if (std::max(std::abs(e1), std::abs(e2)) <= kPlaneTol)
    throw PreconditionError("retraction_phi: point lies on T");
  double s2 = std::numeric_limits<double>::infinity();
  int edge_axis = -1;
  for (int a : {b, cc}) {
    const double e = p[a] - c[a];
    if (e == 0.0) continue;
    const double bound = e > 0 ? k[static_cast<std::size_t>(a)] + 1.0 : k[static_cast<std::size_t>(a)];
    const double sa = (bound - c[a]) / e;
    if (sa < s2) {
      s2 = sa;
      edge_axis = a;
    }
  }
  Vec3 q = p;
  for (int a : {b, cc}) q[a] = c[a] + s2 * (p[a] - c[a]);
  q[edge_axis] = p[edge_axis] - c[edge_axis] > 0 ? k[static_cast<std::size_t>(edge_axis)] + 1.0
                                                 : static_cast<double>(k[static_cast<std::size_t>(edge_axis)]);
  // Keep the result inside the closed cube against rounding.
  for (int a = 0; a < 3; ++a)
    q[a] = std::clamp(q[a], static_cast<double>(k[static_cast<std::size_t>(a)]),
                      static_cast<double>(k[static_cast<std::size_t>(a)]) + 1.0);
  out.point = T.from_lattice(q);
  return out;
}

}  // namespace sepwidth::hyperwidth
