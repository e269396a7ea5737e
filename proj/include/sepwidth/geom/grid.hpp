#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sepwidth::geom {

/// Labeled cells of [0,1)^N at resolution R per axis, row-major with the last
/// axis fastest. Cell c covers [c/R, (c+1)/R). Index arithmetic wraps.
class TorusGrid {
 public:
  static constexpr int kMaxDim = 6;

  TorusGrid() = default;
  TorusGrid(int dim, int res, std::int32_t fill = 0);

  int dim() const { return dim_; }
  int res() const { return res_; }
  std::size_t size() const { return cells_.size(); }
  std::size_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  std::int32_t operator[](std::size_t i) const { return cells_[i]; }
  std::int32_t& operator[](std::size_t i) { return cells_[i]; }
  std::vector<std::int32_t>& cells() { return cells_; }
  const std::vector<std::int32_t>& cells() const { return cells_; }

  /// Coordinates are reduced modulo R.
  std::size_t index(std::span<const int> coords) const;
  void coords(std::size_t index, std::span<int> out) const;
  int coord(std::size_t index, int axis) const {
    return static_cast<int>(index / stride(axis) % static_cast<std::size_t>(res_));
  }
  /// Face neighbor along `axis` in direction dir = +1/-1, wrapping.
  std::size_t neighbor(std::size_t index, int axis, int dir) const;
  /// Cell containing the point x (any real coordinates; wrapped).
  std::size_t cell_of(std::span<const double> x) const;

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  int dim_ = 0, res_ = 0;
  std::vector<std::size_t> strides_;
  std::vector<std::int32_t> cells_;
};

struct ComponentInfo {
  std::size_t cells = 0;
  std::size_t first_cell = 0;  // lowest cell index in the component
  std::int32_t value = 0;      // the shared cell value (region components)
  int extent = 0;              // max over axes of lifted span, in cells
  std::uint32_t winding = 0;   // bit k: wraps around axis k
};

struct Components {
  std::vector<std::int32_t> labels;  // component id per cell, -1 if excluded
  std::vector<ComponentInfo> info;   // in order of first_cell
  // Per cell and axis, the number of times the BFS path from first_cell
  // wrapped; cell c sits at lifted position coords(c) + res * lift.
  std::vector<std::int16_t> lifts;

  /// No component winds and every extent is below `res`.
  bool separated(int res) const;
};

/// Face-connected components of the free cells (value 0); nonzero cells are
/// separator. With wrap, the grid is a torus and winding is tracked through
/// lifted coordinates; without, the grid is a box.
Components grid_components(const TorusGrid& g, bool wrap);

/// Face-connected regions of equal value, over cells whose value is >= 0
/// (or every cell when include_negative).
Components region_components(const TorusGrid& g, bool wrap, bool include_negative = false);

/// Grows the nonzero cells by `radius` face steps (periodic). Grown cells take
/// value 1.
TorusGrid dilate(const TorusGrid& g, int radius = 1);

/// Cells whose value differs from a face neighbor's (periodic), as 0/1.
TorusGrid interface_mask(const TorusGrid& g);

/// Number of unordered face-adjacent pairs with different values (periodic).
std::size_t interface_facets(const TorusGrid& g);

}  // namespace sepwidth::geom
