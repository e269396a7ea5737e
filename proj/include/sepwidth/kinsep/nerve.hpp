#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include "sepwidth/common/vec3.hpp"
#include "sepwidth/geom/grid.hpp"
#include "sepwidth/kinsep/pose.hpp"
#include "sepwidth/kinsep/tower.hpp"

namespace sepwidth::kinsep {

/// One lift of a label region of one posed copy: copy index, region id in
/// region_components order, and the lattice translate of the lift.
struct NerveVertex {
  int copy = 0;
  int region = 0;
  std::array<long, 3> translate{};
  Vec3 point;  // the region's deepest cell center, posed
};

struct NerveComplex {
  std::vector<NerveVertex> vertices;
  std::vector<std::vector<int>> simplices;  // sorted vertex ids, sorted list
  int dimension() const;
  /// Every simplex uses each copy at most once.
  bool copies_distinct() const;
};

/// Partition-of-unity map from the complement of the copies' common
/// intersection to the nerve of their complement components.
class NerveMap {
 public:
  /// Weights are l-inf distances to the component boundary clamped at
  /// `clamp_cells` grid cells.
  static constexpr double kClampCells = 3.0;

  NerveMap(const geom::TorusGrid& grid, std::vector<Pose> copies);

  struct Image {
    Vec3 point;
    std::vector<int> vertices;   // one per copy with positive weight
    std::vector<double> weights; // normalized
  };

  /// Throws PreconditionError if x lies on every copy.
  Image map(const Vec3& x);

  const NerveComplex& complex() const { return complex_; }
  int copies() const { return static_cast<int>(copies_.size()); }

  /// Adds the simplex of an image to the complex.
  void record(const Image& image);

 private:
  struct Located {
    int region = 0;
    std::array<long, 3> translate{};
    double weight = 0.0;
  };
  Located locate(int copy, const Vec3& x) const;
  int vertex(int copy, const Located& loc);

  const geom::TorusGrid* grid_;
  std::vector<Pose> copies_;
  geom::Components regions_;
  std::vector<std::array<long, 3>> deepest_;  // lifted cell of the deepest cell per region
  NerveComplex complex_;
  std::map<std::tuple<int, int, long, long, long>, int> index_;
  std::map<std::vector<int>, int> simplex_index_;
};

struct NerveMapResult {
  NerveComplex complex;
  std::vector<Vec3> images;
  std::vector<double> displacement;  // l-inf
  double sup_displacement = 0.0;
};

/// Maps every query through the nerve of all copies of the tower.
NerveMapResult nerve_map(const SeparatorTower& tower, const std::vector<Vec3>& queries);

}  // namespace sepwidth::kinsep
