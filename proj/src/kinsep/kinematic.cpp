#include "sepwidth/kinsep/kinematic.hpp"

#include <cmath>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/tolerances.hpp"
#include "sepwidth/geom/bvh.hpp"
#include "sepwidth/kinsep/pose.hpp"
#include "sepwidth/sgnperm/signed_permutation.hpp"

namespace sepwidth::kinsep {

using geom::Estimate;
using geom::MeanAccumulator;
using geom::Segment;
using geom::TriMesh;
using geom::Triangle;

double SegmentSet::length() const {
  double total = 0.0;
  for (const auto& s : segments) total += s.length();
  return total;
}

namespace {

struct ChunkResult {
  MeanAccumulator acc;
  std::size_t retries = 0;
};

Box3 segment_bounds(const SegmentSet& p) {
  Box3 b;
  for (const auto& s : p.segments) {
    b.extend(s.a);
    b.extend(s.b);
  }
  return b;
}

// Shifts x with (P + x) meeting M's box: [M.lo - P.hi, M.hi - P.lo].
Box3 minkowski_box(const Box3& m, const Box3& p) {
  Box3 b;
  b.lo = m.lo - p.hi;
  b.hi = m.hi - p.lo;
  return b;
}

// Runs `value(x)` at uniform shifts in `box`, jittering on DegeneratePose.
template <class F>
Estimate integrate_shifts(const Box3& box, std::size_t samples, std::uint64_t seed, F value,
                          std::size_t* jitter_retries) {
  const double vol = box.volume();
  if (vol <= 0.0 || samples == 0) return {};
  const double jitter = tol::kJitter * std::max(1.0, linf(box.hi - box.lo));
  const auto chunks = geom::mc_chunks<ChunkResult>(
      samples, seed, [&](Rng& rng, std::size_t count) {
        ChunkResult out;
        for (std::size_t k = 0; k < count; ++k) {
          Vec3 x;
          for (int a = 0; a < 3; ++a) x[a] = rng.uniform(box.lo[a], box.hi[a]);
          for (int attempt = 0;; ++attempt) {
            try {
              out.acc.add(value(x));
              break;
            } catch (const DegeneratePose&) {
              if (attempt >= tol::kJitterRetries) throw;
              ++out.retries;
              for (int a = 0; a < 3; ++a) x[a] += rng.uniform(-jitter, jitter);
            }
          }
        }
        return out;
      });
  MeanAccumulator total;
  std::size_t retries = 0;
  for (const auto& c : chunks) {
    total.merge(c.acc);
    retries += c.retries;
  }
  if (jitter_retries) *jitter_retries += retries;
  const Estimate e = total.estimate();
  return {e.value * vol, e.se * vol};
}

}  // namespace

Estimate shift_integral_length(const TriMesh& m, const TriMesh& p, std::size_t samples,
                               std::uint64_t seed, std::size_t* jitter_retries) {
  if (m.empty() || p.empty()) return {};
  const geom::MeshBvh bvh(m);
  std::vector<Triangle> ptris;
  for (std::size_t i = 0; i < p.size(); ++i) ptris.push_back(p.triangle(i));
  const Box3 box = minkowski_box(bvh.bounds(), p.bounds());
  return integrate_shifts(
      box, samples, seed,
      [&](const Vec3& x) {
        double length = 0.0;
        for (const auto& t : ptris) {
          const Triangle moved{t.a + x, t.b + x, t.c + x};
          bvh.query_box(moved.bounds(), [&](int i) {
            const auto r = geom::tri_tri_intersection(bvh.triangle(i), moved);
            if (r.kind == geom::TriTriKind::kCoplanar)
              throw DegeneratePose("coplanar contact in shift integral");
            if (r.kind == geom::TriTriKind::kSegment) length += norm(r.q - r.p);
          });
        }
        return length;
      },
      jitter_retries);
}

Estimate shift_integral_count(const TriMesh& m, const SegmentSet& p, std::size_t samples,
                              std::uint64_t seed, std::size_t* jitter_retries) {
  if (m.empty() || p.segments.empty() || p.length() == 0.0) return {};
  const geom::MeshBvh bvh(m);
  const Box3 box = minkowski_box(bvh.bounds(), segment_bounds(p));
  return integrate_shifts(
      box, samples, seed,
      [&](const Vec3& x) {
        double count = 0.0;
        for (const auto& s : p.segments) {
          if (s.length() == 0.0) continue;
          const auto hits = geom::segment_mesh_hits(Segment{s.a + x, s.b + x}, bvh);
          if (hits.degenerate) throw DegeneratePose("grazing contact in shift integral");
          count += static_cast<double>(hits.count());
        }
        return count;
      },
      jitter_retries);
}

namespace {

template <class Integral>
KinematicResult pose_average(Integral integral, double bound) {
  KinematicResult out;
  out.bound = bound;
  const auto group = sgnperm::enumerate_group(3);
  out.per_pose.resize(group.size());
  double var = 0.0;
  for (std::size_t g = 0; g < group.size(); ++g) {
    out.per_pose[g] = integral(group[g], g, &out.jitter_retries);
    out.average.value += out.per_pose[g].value;
    var += out.per_pose[g].se * out.per_pose[g].se;
  }
  const double n = static_cast<double>(group.size());
  out.average.value /= n;
  out.average.se = std::sqrt(var) / n;
  out.within_bound = out.average.value <= bound + tol::kMcSigmas * out.average.se + tol::kBound;
  return out;
}

}  // namespace

KinematicResult kinematic_hypersurface_avg(const TriMesh& m, const TriMesh& p,
                                           std::size_t shift_samples, std::uint64_t seed) {
  const double bound = std::sqrt(2.0 / 3.0) * geom::mesh_area(m) * geom::mesh_area(p);
  return pose_average(
      [&](const sgnperm::SignedPermutation& s, std::size_t g, std::size_t* retries) {
        const TriMesh sp = posed(p, Pose{s, {}});
        return shift_integral_length(m, sp, shift_samples, derive_seed(seed, g), retries);
      },
      bound);
}

KinematicResult kinematic_count_avg(const TriMesh& m, const SegmentSet& p,
                                    std::size_t shift_samples, std::uint64_t seed) {
  const double bound = geom::mesh_area(m) * p.length() / std::sqrt(3.0);
  return pose_average(
      [&](const sgnperm::SignedPermutation& s, std::size_t g, std::size_t* retries) {
        SegmentSet sp;
        for (const auto& seg : p.segments) sp.segments.push_back({s.apply(seg.a), s.apply(seg.b)});
        return shift_integral_count(m, sp, shift_samples, derive_seed(seed, g), retries);
      },
      bound);
}

double flat_length_integral(const Triangle& a, const Triangle& b) {
  const double c = dot(normalized(a.normal()), normalized(b.normal()));
  return a.area() * b.area() * std::sqrt(std::max(0.0, 1.0 - c * c));
}

double flat_count_integral(const Triangle& a, const Segment& s) {
  return a.area() * std::abs(dot(normalized(a.normal()), s.b - s.a));
}

double flat_length_average(const Triangle& a, const Triangle& b) {
  double total = 0.0;
  int count = 0;
  sgnperm::for_each_element(3, [&](const sgnperm::SignedPermutation& s) {
    total += flat_length_integral(a, Triangle{s.apply(b.a), s.apply(b.b), s.apply(b.c)});
    ++count;
  });
  return total / count;
}

double flat_count_average(const Triangle& a, const Segment& seg) {
  double total = 0.0;
  int count = 0;
  sgnperm::for_each_element(3, [&](const sgnperm::SignedPermutation& s) {
    total += flat_count_integral(a, Segment{s.apply(seg.a), s.apply(seg.b)});
    ++count;
  });
  return total / count;
}

}  // namespace sepwidth::kinsep
