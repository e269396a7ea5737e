#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sepwidth/geom/intersect.hpp"
#include "sepwidth/geom/mesh.hpp"
#include "sepwidth/geom/montecarlo.hpp"

namespace sepwidth::kinsep {

struct SegmentSet {
  std::vector<geom::Segment> segments;
  double length() const;
};

struct KinematicResult {
  geom::Estimate average;                 // mean over the 48 poses of the shift integral
  std::vector<geom::Estimate> per_pose;   // in enumerate_group(3) order
  double bound = 0.0;
  bool within_bound = false;              // average <= bound + 4 SE
  std::size_t jitter_retries = 0;
};

/// Integral over x of length(M cap (P + x)), by Monte Carlo over the
/// Minkowski box of shifts where the intersection can be nonempty.
geom::Estimate shift_integral_length(const geom::TriMesh& m, const geom::TriMesh& p,
                                     std::size_t samples, std::uint64_t seed,
                                     std::size_t* jitter_retries = nullptr);

/// Integral over x of #(M cap (P + x)).
geom::Estimate shift_integral_count(const geom::TriMesh& m, const SegmentSet& p,
                                    std::size_t samples, std::uint64_t seed,
                                    std::size_t* jitter_retries = nullptr);

/// Average over all 48 signed permutations s of the integral of
/// length(M cap (sP + x)); bound sqrt(2/3) area(M) area(P).
KinematicResult kinematic_hypersurface_avg(const geom::TriMesh& m, const geom::TriMesh& p,
                                           std::size_t shift_samples, std::uint64_t seed);

/// Same for counts against a segment set; bound area(M) length(P) / sqrt(3).
KinematicResult kinematic_count_avg(const geom::TriMesh& m, const SegmentSet& p,
                                    std::size_t shift_samples, std::uint64_t seed);

/// Closed forms for flat pieces: A1 A2 sqrt(1 - (n1.n2)^2) and A L |n.d|.
double flat_length_integral(const geom::Triangle& a, const geom::Triangle& b);
double flat_count_integral(const geom::Triangle& a, const geom::Segment& s);

/// Exact 48-element averages of the closed forms.
double flat_length_average(const geom::Triangle& a, const geom::Triangle& b);
double flat_count_average(const geom::Triangle& a, const geom::Segment& s);

}  // namespace sepwidth::kinsep
