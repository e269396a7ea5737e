#include "sepwidth/geom/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/kernels/kernels.hpp"

namespace sepwidth::geom {

TorusGrid::TorusGrid(int dim, int res, std::int32_t fill) : dim_(dim), res_(res) {
  if (dim < 1 || dim > kMaxDim) throw PreconditionError("grid dimension must be in [1, 6]");
  if (res < 1) throw PreconditionError("grid resolution must be positive");
  double total = std::pow(static_cast<double>(res), dim);
  if (total > 1.5e9) throw PreconditionError("grid too large");
  strides_.assign(static_cast<std::size_t>(dim), 1);
  for (int k = dim - 2; k >= 0; --k)
    strides_[static_cast<std::size_t>(k)] =
        strides_[static_cast<std::size_t>(k + 1)] * static_cast<std::size_t>(res);
  cells_.assign(strides_[0] * static_cast<std::size_t>(res), fill);
}

std::size_t TorusGrid::index(std::span<const int> coords) const {
  std::size_t idx = 0;
  for (int k = 0; k < dim_; ++k) {
    int c = coords[static_cast<std::size_t>(k)] % res_;
    if (c < 0) c += res_;
    idx += static_cast<std::size_t>(c) * stride(k);
  }
  return idx;
}

void TorusGrid::coords(std::size_t index, std::span<int> out) const {
  for (int k = 0; k < dim_; ++k) out[static_cast<std::size_t>(k)] = coord(index, k);
}

std::size_t TorusGrid::neighbor(std::size_t index, int axis, int dir) const {
  const int c = coord(index, axis);
  const std::size_t s = stride(axis);
  if (dir > 0) return c + 1 == res_ ? index - s * static_cast<std::size_t>(res_ - 1) : index + s;
  return c == 0 ? index + s * static_cast<std::size_t>(res_ - 1) : index - s;
}

std::size_t TorusGrid::cell_of(std::span<const double> x) const {
  std::size_t idx = 0;
  for (int k = 0; k < dim_; ++k) {
    double u = x[static_cast<std::size_t>(k)];
    u -= std::floor(u);
    int c = static_cast<int>(u * res_);
    if (c >= res_) c = res_ - 1;
    idx += static_cast<std::size_t>(c) * stride(k);
  }
  return idx;
}

bool Components::separated(int res) const {
  for (const auto& c : info)
    if (c.winding != 0 || c.extent >= res) return false;
  return true;
}

namespace {

template <class Include, class Same>
Components label(const TorusGrid& g, bool wrap, Include include, Same same) {
  const int n = g.dim(), r = g.res();
  const std::size_t total = g.size();
  Components out;
  out.labels.assign(total, -1);
  // Per visited cell, how many times the BFS path wrapped along each axis.
  out.lifts.assign(total * static_cast<std::size_t>(n), 0);
  auto& lift = out.lifts;
  std::vector<int> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < total; ++start) {
    if (out.labels[start] >= 0 || !include(start)) continue;
    const auto id = static_cast<std::int32_t>(out.info.size());
    ComponentInfo info;
    info.first_cell = start;
    info.value = g[start];
    for (int k = 0; k < n; ++k) lo[static_cast<std::size_t>(k)] = hi[static_cast<std::size_t>(k)] = g.coord(start, k);
    out.labels[start] = id;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t a = queue.front();
      queue.pop_front();
      ++info.cells;
      const std::int16_t* la = &lift[a * static_cast<std::size_t>(n)];
      for (int k = 0; k < n; ++k) {
        const int ca = g.coord(a, k);
        for (int dir : {-1, 1}) {
          const bool seam = (dir > 0 && ca == r - 1) || (dir < 0 && ca == 0);
          if (seam && !wrap) continue;
          const std::size_t b = g.neighbor(a, k, dir);
          if (!include(b) || !same(a, b)) continue;
          std::int16_t expect[TorusGrid::kMaxDim];
          for (int j = 0; j < n; ++j) expect[j] = la[j];
          if (seam) expect[k] = static_cast<std::int16_t>(expect[k] + dir);
          std::int16_t* lb = &lift[b * static_cast<std::size_t>(n)];
          if (out.labels[b] >= 0) {
            for (int j = 0; j < n; ++j)
              if (lb[j] != expect[j]) info.winding |= 1u << j;
            continue;
          }
          out.labels[b] = id;
          for (int j = 0; j < n; ++j) {
            lb[j] = expect[j];
            const int lifted = g.coord(b, j) + r * expect[j];
            lo[static_cast<std::size_t>(j)] = std::min(lo[static_cast<std::size_t>(j)], lifted);
            hi[static_cast<std::size_t>(j)] = std::max(hi[static_cast<std::size_t>(j)], lifted);
          }
          queue.push_back(b);
        }
      }
    }
    for (int k = 0; k < n; ++k)
      info.extent = std::max(info.extent, hi[static_cast<std::size_t>(k)] - lo[static_cast<std::size_t>(k)] + 1);
    out.info.push_back(info);
  }
  return out;
}

}  // namespace

Components grid_components(const TorusGrid& g, bool wrap) {
  return label(
      g, wrap, [&](std::size_t i) { return g[i] == 0; },
      [](std::size_t, std::size_t) { return true; });
}

Components region_components(const TorusGrid& g, bool wrap, bool include_negative) {
  return label(
      g, wrap, [&](std::size_t i) { return include_negative || g[i] >= 0; },
      [&](std::size_t a, std::size_t b) { return g[a] == g[b]; });
}

TorusGrid dilate(const TorusGrid& g, int radius) {
  TorusGrid cur = g;
  for (int step = 0; step < radius; ++step) {
    TorusGrid next = cur;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (cur[i] != 0) continue;
      for (int k = 0; k < cur.dim() && next[i] == 0; ++k)
        if (cur[cur.neighbor(i, k, 1)] != 0 || cur[cur.neighbor(i, k, -1)] != 0) next[i] = 1;
    }
    cur = std::move(next);
  }
  return cur;
}

TorusGrid interface_mask(const TorusGrid& g) {
  TorusGrid out(g.dim(), g.res(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (int k = 0; k < g.dim(); ++k) {
      const std::size_t j = g.neighbor(i, k, 1);
      if (g[i] != g[j]) {
        out[i] = 1;
        out[j] = 1;
      }
    }
  return out;
}

std::size_t interface_facets(const TorusGrid& g) {
  const auto& kt = kernels::active();
  std::size_t count = 0;
  const auto& c = g.cells();
  const std::size_t total = g.size();
  for (int k = 0; k < g.dim(); ++k) {
    // Compare the grid with its copy shifted by one cell along axis k. Cells
    // with coordinate < R-1 pair with index + stride; the last slab wraps.
    const std::size_t s = g.stride(k);
    const std::size_t block = s * static_cast<std::size_t>(g.res());
    for (std::size_t base = 0; base < total; base += block) {
      count += kt.count_mismatch(&c[base], &c[base + s], block - s);
      count += kt.count_mismatch(&c[base + block - s], &c[base], s);
    }
  }
  return count;
}

}  // namespace sepwidth::geom
