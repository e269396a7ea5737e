#include "sepwidth/kinsep/tower.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/parallel.hpp"
#include "sepwidth/common/rng.hpp"
#include "sepwidth/geom/montecarlo.hpp"

namespace sepwidth::kinsep {

namespace {

long wrap(long v, long r) {
  const long m = v % r;
  return m < 0 ? m + r : m;
}

long floor_long(double v) { return static_cast<long>(std::floor(v)); }

// Distance from v to the nearest integer.
double off_integer(double v) { return std::abs(v - std::round(v)); }

constexpr double kCoincident = 1e-9;  // in cell units

}  // namespace

std::vector<Facet> label_facets(const geom::TorusGrid& grid) {
  if (grid.dim() != 3) throw PreconditionError("label_facets: grid must be 3-dimensional");
  std::vector<Facet> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int a = 0; a < 3; ++a) {
      if (grid[i] == grid[grid.neighbor(i, a, +1)]) continue;
      Facet f;
      f.axis = a;
      f.plane = (grid.coord(i, a) + 1) % grid.res();
      f.u = grid.coord(i, (a + 1) % 3);
      f.v = grid.coord(i, (a + 2) % 3);
      out.push_back(f);
    }
  }
  return out;
}

PosedFoam::PosedFoam(const geom::TorusGrid* grid, const Pose& pose)
    : grid_(grid), pose_(pose), inverse_(pose.inverse()), res_(grid->res()),
      h_(1.0 / grid->res()) {
  if (grid->dim() != 3) throw PreconditionError("PosedFoam: grid must be 3-dimensional");
  for (int k = 0; k < 3; ++k) {
    const double s = pose.x[k] / h_;
    shift_[static_cast<std::size_t>(k)] = floor_long(s);
    frac_[static_cast<std::size_t>(k)] = s - std::floor(s);
  }
}

std::size_t PosedFoam::cell_index(const std::array<long, 3>& c) const {
  int cell[3];
  for (int j = 0; j < 3; ++j) {
    const long rel = c[static_cast<std::size_t>(j)] - shift_[static_cast<std::size_t>(j)];
    const long g = pose_.s.sign(j) > 0 ? rel : -rel - 1;
    cell[pose_.s.perm(j)] = static_cast<int>(wrap(g, res_));
  }
  return grid_->index(cell);
}

std::int32_t PosedFoam::cell_value(const std::array<long, 3>& c) const {
  return (*grid_)[cell_index(c)];
}

bool PosedFoam::has_facet(const Facet& f) const {
  // The two posed cells on either side of the plane.
  std::array<long, 3> lo{}, hi{};
  const int i = f.axis;
  lo[static_cast<std::size_t>(i)] = f.plane - 1;
  hi[static_cast<std::size_t>(i)] = f.plane;
  lo[static_cast<std::size_t>((i + 1) % 3)] = hi[static_cast<std::size_t>((i + 1) % 3)] = f.u;
  lo[static_cast<std::size_t>((i + 2) % 3)] = hi[static_cast<std::size_t>((i + 2) % 3)] = f.v;
  return cell_value(lo) != cell_value(hi);
}

Facet PosedFoam::image(const Facet& f) const {
  int i = 0;
  while (pose_.s.perm(i) != f.axis) ++i;
  Facet out;
  out.axis = i;
  const long p = pose_.s.sign(i) > 0 ? f.plane : -f.plane;
  out.plane = wrap(p + shift_[static_cast<std::size_t>(i)], res_);
  long cells[2];
  for (int t = 0; t < 2; ++t) {
    const int j = (i + 1 + t) % 3;
    const int a = pose_.s.perm(j);
    const long c = a == (f.axis + 1) % 3 ? f.u : f.v;
    const long posed_c = pose_.s.sign(j) > 0 ? c : -c - 1;
    cells[t] = wrap(posed_c + shift_[static_cast<std::size_t>(j)], res_);
  }
  out.u = cells[0];
  out.v = cells[1];
  return out;
}

std::array<long, 3> PosedFoam::cell_of(const Vec3& y) const {
  std::array<long, 3> c{};
  for (int k = 0; k < 3; ++k) c[static_cast<std::size_t>(k)] = floor_long(y[k] / h_ - frac(k));
  return c;
}

double PosedFoam::plane_coord(const Facet& f) const {
  return (static_cast<double>(f.plane) + frac(f.axis)) * h_;
}

void PosedFoam::extent(const Facet& f, int axis, double& lo, double& hi) const {
  const long c = axis == (f.axis + 1) % 3 ? f.u : f.v;
  lo = (static_cast<double>(c) + frac(axis)) * h_;
  hi = lo + h_;
}

void PosedFoam::facets_in_box(const Box3& box,
                              const std::function<void(const Facet&)>& visit) const {
  if (box.empty()) return;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    const long p0 = static_cast<long>(std::ceil(box.lo[i] / h_ - frac(i)));
    const long p1 = floor_long(box.hi[i] / h_ - frac(i));
    const long u0 = floor_long(box.lo[j] / h_ - frac(j)), u1 = floor_long(box.hi[j] / h_ - frac(j));
    const long v0 = floor_long(box.lo[k] / h_ - frac(k)), v1 = floor_long(box.hi[k] / h_ - frac(k));
    for (long p = p0; p <= p1; ++p)
      for (long u = u0; u <= u1; ++u)
        for (long v = v0; v <= v1; ++v) {
          const Facet f{i, p, u, v};
          if (has_facet(f)) visit(f);
        }
  }
}

bool PosedFoam::contains(const Vec3& y, double tol) const {
  double g[3];
  for (int k = 0; k < 3; ++k) g[k] = y[k] / h_ - frac(k);
  const double t = tol / h_;
  for (int i = 0; i < 3; ++i) {
    if (off_integer(g[i]) > t) continue;
    const long p = std::lround(g[i]);
    std::vector<long> cand[2];
    for (int s = 0; s < 2; ++s) {
      const double gj = g[(i + 1 + s) % 3];
      if (off_integer(gj) <= t) {
        cand[s] = {std::lround(gj) - 1, std::lround(gj)};
      } else {
        cand[s] = {floor_long(gj)};
      }
    }
    for (long u : cand[0])
      for (long v : cand[1])
        if (has_facet(Facet{i, p, u, v})) return true;
  }
  return false;
}

geom::TriMesh PosedFoam::facet_mesh(const std::vector<Facet>& posed_facets) const {
  geom::TriMesh mesh;
  for (const auto& f : posed_facets) {
    const int i = f.axis, j = (i + 1) % 3, k = (i + 2) % 3;
    double ulo, uhi, vlo, vhi;
    extent(f, j, ulo, uhi);
    extent(f, k, vlo, vhi);
    const int base = static_cast<int>(mesh.vertices.size());
    for (int corner = 0; corner < 4; ++corner) {
      Vec3 p;
      p[i] = plane_coord(f);
      p[j] = (corner == 1 || corner == 2) ? uhi : ulo;
      p[k] = corner >= 2 ? vhi : vlo;
      mesh.vertices.push_back(p);
    }
    mesh.triangles.push_back({base, base + 1, base + 2});
    mesh.triangles.push_back({base, base + 2, base + 3});
  }
  return mesh;
}

double tower_bound(int m) {
  double falling = 1.0;
  for (int j = 0; j <= m; ++j) falling *= 3 - j;
  return std::pow(2.0 * std::numbers::pi, m + 1) * std::sqrt(falling);
}

double intersect_surfaces(const PosedFoam& a, const std::vector<Facet>& a_facets,
                          const PosedFoam& b, std::vector<TowerSegment>* out) {
  double da[3], db[3];
  for (int k = 0; k < 3; ++k) {
    da[k] = a.frac(k);
    db[k] = b.frac(k);
    if (off_integer(da[k] - db[k]) < kCoincident)
      throw DegeneratePose("intersect_surfaces: copies share a plane offset on axis " +
                           std::to_string(k));
  }
  const double h = a.h();
  double cells = 0.0;
  for (const auto& fa : a_facets) {
    const int ax = fa.axis;
    long ca[3];
    ca[ax] = fa.plane;
    ca[(ax + 1) % 3] = fa.u;
    ca[(ax + 2) % 3] = fa.v;
    for (int t = 1; t <= 2; ++t) {
      const int ap = (ax + t) % 3;       // b's normal
      const int along = 3 - ax - ap;     // the segment direction
      const long pb = ca[ap] + (da[ap] - db[ap] > 0.0 ? 1 : 0);
      long cb[3];
      cb[ap] = pb;
      cb[ax] = floor_long(static_cast<double>(fa.plane) + da[ax] - db[ax]);
      const long base = ca[along] + floor_long(da[along] - db[along]);
      for (long c = base; c <= base + 1; ++c) {
        const double lo = std::max(static_cast<double>(ca[along]) + da[along], static_cast<double>(c) + db[along]);
        const double hi = std::min(static_cast<double>(ca[along]) + 1.0 + da[along], static_cast<double>(c) + 1.0 + db[along]);
        if (hi <= lo) continue;
        cb[along] = c;
        const Facet fb{ap, pb, cb[(ap + 1) % 3], cb[(ap + 2) % 3]};
        if (!b.has_facet(fb)) continue;
        cells += hi - lo;
        if (out) {
          TowerSegment s;
          s.axis = along;
          s.p[ax] = s.q[ax] = (static_cast<double>(fa.plane) + da[ax]) * h;
          s.p[ap] = s.q[ap] = (static_cast<double>(pb) + db[ap]) * h;
          s.p[along] = lo * h;
          s.q[along] = hi * h;
          out->push_back(s);
        }
      }
    }
  }
  return cells * h;
}

std::size_t intersect_segments(const std::vector<TowerSegment>& segments, const PosedFoam& c,
                               std::vector<Vec3>* out) {
  const double h = c.h();
  std::size_t count = 0;
  for (const auto& s : segments) {
    const int b = s.axis, a1 = (b + 1) % 3, a2 = (b + 2) % 3;
    const double g1 = s.p[a1] / h - c.frac(a1), g2 = s.p[a2] / h - c.frac(a2);
    const double lo = s.p[b] / h - c.frac(b), hi = s.q[b] / h - c.frac(b);
    if (off_integer(g1) < kCoincident || off_integer(g2) < kCoincident ||
        off_integer(lo) < kCoincident || off_integer(hi) < kCoincident)
      throw DegeneratePose("intersect_segments: segment meets a cell edge of the copy");
    const Facet base{b, 0, floor_long(g1), floor_long(g2)};
    for (long p = static_cast<long>(std::ceil(lo)); static_cast<double>(p) < hi; ++p) {
      Facet f = base;
      f.plane = p;
      if (!c.has_facet(f)) continue;
      ++count;
      if (out) {
        Vec3 x = s.p;
        x[b] = (static_cast<double>(p) + c.frac(b)) * h;
        out->push_back(x);
      }
    }
  }
  return count;
}

SeparatorTower build_tower(const foam::FoamState& foam, int m, std::size_t pose_samples,
                           std::uint64_t seed) {
  if (foam.dim != 3) throw PreconditionError("build_tower: foam must be 3-dimensional");
  if (!foam.separated) throw PreconditionError("build_tower: foam is not separated");
  if (m < 0 || m > 2) throw PreconditionError("build_tower: level must be 0, 1 or 2");
  if (m > 0 && pose_samples == 0) throw PreconditionError("build_tower: pose_samples must be positive");

  SeparatorTower tower;
  tower.grid = foam.grid;
  tower.calibration = foam.calibration;
  tower.copies.push_back(Pose{});
  tower.facets = label_facets(tower.grid);
  const double h = 1.0 / tower.grid.res();

  TowerLevel base;
  base.m = 0;
  base.measure = static_cast<double>(tower.facets.size()) * h * h;
  base.calibrated = base.measure * tower.calibration;
  base.bound = tower_bound(0);
  base.within_bound = base.measure <= base.bound;
  tower.levels.push_back(base);
  tower.bound_miss = !base.within_bound;

  const PosedFoam copy0 = tower.copy(0);
  for (int level = 1; level <= m; ++level) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(level)));
    std::vector<Pose> poses(pose_samples);
    for (auto& p : poses) p = random_pose(rng);
    std::vector<double> measure(pose_samples, 0.0);
    std::vector<char> valid(pose_samples, 1);
    parallel_for(pose_samples, [&](std::size_t k) {
      const PosedFoam cand(&tower.grid, poses[k]);
      try {
        for (int i = 0; i < level; ++i) {
          // Planes shared with an earlier copy make every level degenerate.
          const PosedFoam prev = tower.copy(i);
          for (int a = 0; a < 3; ++a)
            if (off_integer(prev.frac(a) - cand.frac(a)) < kCoincident)
              throw DegeneratePose("shared plane offset");
        }
        measure[k] = level == 1
                         ? intersect_surfaces(copy0, tower.facets, cand, nullptr)
                         : static_cast<double>(intersect_segments(tower.segments, cand, nullptr));
      } catch (const DegeneratePose&) {
        valid[k] = 0;
      }
    });
    TowerLevel info;
    info.m = level;
    info.bound = tower_bound(level);
    info.candidates = pose_samples;
    geom::MeanAccumulator acc;
    bool any = false;
    for (std::size_t k = 0; k < pose_samples; ++k) {
      if (!valid[k]) {
        ++info.degenerate_candidates;
        continue;
      }
      acc.add(measure[k]);
      if (!any || measure[k] < measure[info.chosen]) info.chosen = k;
      any = true;
    }
    if (!any) throw SearchExhausted("build_tower: every candidate pose was degenerate");
    const auto est = acc.estimate();
    info.candidate_mean = est.value;
    info.candidate_se = est.se;
    tower.copies.push_back(poses[info.chosen]);
    const PosedFoam chosen = tower.copy(level);
    if (level == 1) {
      info.measure = intersect_surfaces(copy0, tower.facets, chosen, &tower.segments);
    } else {
      info.measure = static_cast<double>(intersect_segments(tower.segments, chosen, &tower.points));
    }
    info.calibrated = info.measure;
    info.within_bound = info.measure <= info.bound;
    tower.bound_miss = tower.bound_miss || !info.within_bound;
    tower.levels.push_back(info);
  }
  return tower;
}

namespace {

double overlap(double lo, double hi, double clo, double chi) {
  return std::max(0.0, std::min(hi, chi) - std::max(lo, clo));
}

bool inside(double v, double lo) { return v >= lo && v < lo + 1.0; }

}  // namespace

double level_measure_in_cell(const SeparatorTower& tower, int level, const Vec3& corner) {
  if (level < 0 || level > tower.top()) throw PreconditionError("level_measure_in_cell: no such level");
  const double h = 1.0 / tower.grid.res();
  double total = 0.0;
  for (int zx = -1; zx <= 1; ++zx)
    for (int zy = -1; zy <= 1; ++zy)
      for (int zz = -1; zz <= 1; ++zz) {
        const Vec3 z{static_cast<double>(zx), static_cast<double>(zy), static_cast<double>(zz)};
        if (level == 0) {
          for (const auto& f : tower.facets) {
            const int i = f.axis, j = (i + 1) % 3, k = (i + 2) % 3;
            if (!inside(static_cast<double>(f.plane) * h + z[i], corner[i])) continue;
            const double ulo = static_cast<double>(f.u) * h + z[j];
            const double vlo = static_cast<double>(f.v) * h + z[k];
            total += overlap(ulo, ulo + h, corner[j], corner[j] + 1.0) *
                     overlap(vlo, vlo + h, corner[k], corner[k] + 1.0);
          }
        } else if (level == 1) {
          for (const auto& s : tower.segments) {
            const int b = s.axis, a1 = (b + 1) % 3, a2 = (b + 2) % 3;
            if (!inside(s.p[a1] + z[a1], corner[a1]) || !inside(s.p[a2] + z[a2], corner[a2])) continue;
            total += overlap(s.p[b] + z[b], s.q[b] + z[b], corner[b], corner[b] + 1.0);
          }
        } else {
          for (const auto& p : tower.points) {
            const Vec3 q = p + z;
            if (inside(q.x, corner.x) && inside(q.y, corner.y) && inside(q.z, corner.z)) total += 1.0;
          }
        }
      }
  return total;
}

bool check_containment(const SeparatorTower& tower, double tol, std::size_t* failures) {
  std::size_t bad = 0;
  std::vector<PosedFoam> copies;
  for (int i = 0; i <= tower.top(); ++i) copies.push_back(tower.copy(i));
  const auto on_first = [&](const Vec3& y, int upto) {
    for (int i = 0; i <= upto; ++i)
      if (!copies[static_cast<std::size_t>(i)].contains(y, tol)) return false;
    return true;
  };
  for (const auto& s : tower.segments) {
    if (!on_first(s.p, 1) || !on_first(s.q, 1) || !on_first(lerp(s.p, s.q, 0.5), 1)) ++bad;
  }
  for (const auto& p : tower.points)
    if (!on_first(p, 2)) ++bad;
  if (failures) *failures = bad;
  return bad == 0;
}

}  // namespace sepwidth::kinsep
