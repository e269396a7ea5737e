#include "sepwidth/kinsep/highcodim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"
#include "sepwidth/common/parallel.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/common/tolerances.hpp"
#include "sepwidth/geom/bvh.hpp"
#include "sepwidth/geom/intersect.hpp"
#include "sepwidth/geom/montecarlo.hpp"

namespace sepwidth::kinsep {

using geom::Segment;
using geom::TriMesh;

namespace {

// Clips p->q (in-plane coordinates) to [ulo,uhi] x [vlo,vhi].
bool clip_to_rect(double& pu, double& pv, double& qu, double& qv, double ulo, double uhi,
                  double vlo, double vhi) {
  double t0 = 0.0, t1 = 1.0;
  const double du = qu - pu, dv = qv - pv;
  const double p[4] = {-du, du, -dv, dv};
  const double q[4] = {pu - ulo, uhi - pu, pv - vlo, vhi - pv};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return false;
      continue;
    }
    const double r = q[k] / p[k];
    if (p[k] < 0.0) t0 = std::max(t0, r);
    else t1 = std::min(t1, r);
  }
  if (t1 <= t0) return false;
  const double nu0 = pu + t0 * du, nv0 = pv + t0 * dv;
  qu = pu + t1 * du;
  qv = pv + t1 * dv;
  pu = nu0;
  pv = nv0;
  return true;
}

void finish_masses(RouteReport& r) {
  geom::MeanAccumulator acc;
  for (double m : r.masses) acc.add(m);
  const auto e = acc.estimate();
  r.mean_mass = e.value;
  r.mean_mass_se = e.se;
  r.contradicts_bound = r.mean_mass > r.averaging_bound + tol::kMcSigmas * r.mean_mass_se;
}

std::vector<Pose> draw_poses(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<Pose> poses(count);
  for (auto& p : poses) p = random_pose(rng);
  return poses;
}

}  // namespace

double mesh_surface_curve(const TriMesh& mesh, const PosedFoam& copy, std::vector<Segment>* out) {
  double length = 0.0;
  for (std::size_t t = 0; t < mesh.size(); ++t) {
    const auto tri = mesh.triangle(t);
    const double scale = std::max(1.0, linf(tri.bounds().hi - tri.bounds().lo));
    copy.facets_in_box(tri.bounds(), [&](const Facet& f) {
      const int i = f.axis, j = (i + 1) % 3, k = (i + 2) % 3;
      const double c = copy.plane_coord(f);
      double d[3];
      for (int e = 0; e < 3; ++e) {
        d[e] = tri[e][i] - c;
        if (std::abs(d[e]) < tol::kGeometric * scale)
          throw DegeneratePose("mesh_surface_curve: mesh vertex on a copy plane");
      }
      Vec3 ends[2];
      int found = 0;
      for (int e = 0; e < 3; ++e) {
        const int e2 = (e + 1) % 3;
        if ((d[e] < 0.0) == (d[e2] < 0.0)) continue;
        ends[found++] = lerp(tri[e], tri[e2], d[e] / (d[e] - d[e2]));
      }
      if (found != 2) return;
      double ulo, uhi, vlo, vhi;
      copy.extent(f, j, ulo, uhi);
      copy.extent(f, k, vlo, vhi);
      double pu = ends[0][j], pv = ends[0][k], qu = ends[1][j], qv = ends[1][k];
      if (!clip_to_rect(pu, pv, qu, qv, ulo, uhi, vlo, vhi)) return;
      Vec3 a, b;
      a[i] = b[i] = c;
      a[j] = pu;
      a[k] = pv;
      b[j] = qu;
      b[k] = qv;
      const double len = norm(b - a);
      if (len <= 0.0) return;
      length += len;
      if (out) out->push_back(Segment{a, b});
    });
  }
  return length;
}

std::size_t segments_surface_hits(const std::vector<Segment>& segments, const PosedFoam& copy) {
  std::size_t hits = 0;
  for (const auto& s : segments) {
    Box3 box;
    box.extend(s.a);
    box.extend(s.b);
    const double scale = std::max(1.0, linf(box.hi - box.lo));
    copy.facets_in_box(box, [&](const Facet& f) {
      const int i = f.axis, j = (i + 1) % 3, k = (i + 2) % 3;
      const double c = copy.plane_coord(f);
      const double dp = s.a[i] - c, dq = s.b[i] - c;
      if (std::abs(dp) < tol::kGeometric * scale || std::abs(dq) < tol::kGeometric * scale)
        throw DegeneratePose("segments_surface_hits: endpoint on a copy plane");
      if ((dp < 0.0) == (dq < 0.0)) return;
      const Vec3 x = lerp(s.a, s.b, dp / (dp - dq));
      double ulo, uhi, vlo, vhi;
      copy.extent(f, j, ulo, uhi);
      copy.extent(f, k, vlo, vhi);
      const double eps = tol::kGeometric * scale;
      if (std::abs(x[j] - ulo) < eps || std::abs(x[j] - uhi) < eps || std::abs(x[k] - vlo) < eps ||
          std::abs(x[k] - vhi) < eps)
        throw DegeneratePose("segments_surface_hits: crossing on a facet edge");
      if (x[j] > ulo && x[j] < uhi && x[k] > vlo && x[k] < vhi) ++hits;
    });
  }
  return hits;
}

std::size_t mesh_separator_hits(const TriMesh& mesh, const SeparatorTower& tower, const Pose& pose,
                                bool* degenerate) {
  if (degenerate) *degenerate = false;
  if (mesh.empty()) return 0;
  const TriMesh pulled = posed(mesh, pose.inverse());
  const geom::MeshBvh bvh(pulled);
  const Box3& box = bvh.bounds();
  std::size_t hits = 0;
  for (const auto& s : tower.segments) {
    long lo[3], hi[3];
    bool any = true;
    for (int k = 0; k < 3; ++k) {
      lo[k] = static_cast<long>(std::ceil(box.lo[k] - s.q[k]));
      hi[k] = static_cast<long>(std::floor(box.hi[k] - s.p[k]));
      if (hi[k] < lo[k]) any = false;
    }
    if (!any) continue;
    for (long zx = lo[0]; zx <= hi[0]; ++zx)
      for (long zy = lo[1]; zy <= hi[1]; ++zy)
        for (long zz = lo[2]; zz <= hi[2]; ++zz) {
          const Vec3 z{static_cast<double>(zx), static_cast<double>(zy), static_cast<double>(zz)};
          const auto r = geom::segment_mesh_hits(Segment{s.p + z, s.q + z}, bvh);
          if (r.degenerate && degenerate) *degenerate = true;
          hits += r.count();
        }
  }
  return hits;
}

namespace {

void map_samples(const std::vector<Vec3>& samples, NerveMap& map, WidthCertificate& cert) {
  for (const auto& y : samples) {
    const auto image = map.map(y);
    map.record(image);
    cert.sample_map.emplace_back(y, image.point);
  }
  cert.nerve = map.complex();
  std::sort(cert.nerve.simplices.begin(), cert.nerve.simplices.end());
  cert.target_dimension = std::max(0, cert.nerve.dimension());
  cert.finalize();
}

}  // namespace

HighCodimResult width_pipeline_highcodim(const TriMesh& mesh, const SeparatorTower& tower,
                                         std::uint64_t seed, const HighCodimOptions& options) {
  const double area = geom::mesh_area(mesh);
  const double scaled = 4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(2.0) * area;
  if (!(scaled < 1.0))
    throw PreconditionError("width_pipeline_highcodim: (2 pi)^2 sqrt(2) area = " +
                            format_double(scaled) + " is not below 1");
  if (tower.top() < 1) throw PreconditionError("width_pipeline_highcodim: tower needs level 1");

  HighCodimResult out;
  out.certificate.mesh_scale = 1.0;
  out.certificate.claimed_bound = 1.0;
  if (mesh.empty()) {
    out.success = true;
    out.certificate.route = "empty";
    out.separator_route.success = out.copies_route.success = true;
    return out;
  }

  std::vector<Vec3> samples = mesh.vertices;
  {
    Rng rng(derive_seed(seed, 0));
    const auto extra = geom::sample_surface(mesh, options.mesh_samples, rng);
    samples.insert(samples.end(), extra.begin(), extra.end());
  }
  const std::size_t budget = options.pose_budget;

  // Route through the level-1 separator: one pose of SEP_1 missing M.
  {
    RouteReport& r = out.separator_route;
    const auto poses = draw_poses(derive_seed(seed, 1), budget);
    std::vector<double> hits(budget, 0.0);
    std::vector<char> bad(budget, 0);
    parallel_for(budget, [&](std::size_t k) {
      bool degenerate = false;
      hits[k] = static_cast<double>(mesh_separator_hits(mesh, tower, poses[k], &degenerate));
      bad[k] = degenerate;
    });
    r.poses_tried = budget;
    r.averaging_bound = area * tower.levels[1].measure / std::sqrt(3.0);
    for (std::size_t k = 0; k < budget; ++k) {
      if (bad[k]) {
        ++r.degenerate_poses;
        continue;
      }
      r.masses.push_back(hits[k]);
      if (!r.success && hits[k] == 0.0) {
        r.success = true;
        r.chosen = k;
      }
    }
    finish_masses(r);
    if (r.success) {
      const Pose& g = poses[r.chosen];
      r.poses = {g.compose(tower.copies[0]), g.compose(tower.copies[1])};
    }
  }

  // Route through two level-0 copies: M cap copy A is a curve, which must
  // miss copy B.
  std::vector<Segment> curve;
  {
    RouteReport& r = out.copies_route;
    const auto first = draw_poses(derive_seed(seed, 2), budget);
    std::vector<double> length(budget, 0.0);
    std::vector<char> bad(budget, 0);
    parallel_for(budget, [&](std::size_t k) {
      try {
        length[k] = mesh_surface_curve(mesh, PosedFoam(&tower.grid, first[k]), nullptr);
      } catch (const DegeneratePose&) {
        bad[k] = 1;
      }
    });
    std::size_t best = budget;
    for (std::size_t k = 0; k < budget; ++k)
      if (!bad[k] && (best == budget || length[k] < length[best])) best = k;
    if (best < budget) {
      const PosedFoam a(&tower.grid, first[best]);
      r.curve_length = mesh_surface_curve(mesh, a, &curve);
      const auto second = draw_poses(derive_seed(seed, 3), budget);
      std::vector<double> hits(budget, 0.0);
      std::vector<char> bad2(budget, 0);
      parallel_for(budget, [&](std::size_t k) {
        try {
          hits[k] = static_cast<double>(segments_surface_hits(curve, PosedFoam(&tower.grid, second[k])));
        } catch (const DegeneratePose&) {
          bad2[k] = 1;
        }
      });
      r.poses_tried = budget;
      r.averaging_bound = r.curve_length * tower.levels[0].measure / std::sqrt(3.0);
      for (std::size_t k = 0; k < budget; ++k) {
        if (bad2[k]) {
          ++r.degenerate_poses;
          continue;
        }
        r.masses.push_back(hits[k]);
        if (!r.success && hits[k] == 0.0) {
          r.success = true;
          r.chosen = k;
        }
      }
      finish_masses(r);
      if (r.success) r.poses = {first[best], second[r.chosen]};
    }
  }

  const RouteReport* used = out.separator_route.success ? &out.separator_route
                            : out.copies_route.success  ? &out.copies_route
                                                        : nullptr;
  if (!used) return out;
  out.success = true;
  out.certificate.route = used == &out.separator_route ? "separator" : "copies";
  NerveMap map(tower.grid, used->poses);
  map_samples(samples, map, out.certificate);
  return out;
}

}  // namespace sepwidth::kinsep
