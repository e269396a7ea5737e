#include "sepwidth/kinsep/nerve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <string>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"

namespace sepwidth::kinsep {

int NerveComplex::dimension() const {
  int d = -1;
  for (const auto& s : simplices) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

bool NerveComplex::copies_distinct() const {
  for (const auto& s : simplices) {
    std::set<int> seen;
    for (int v : s)
      if (!seen.insert(vertices[static_cast<std::size_t>(v)].copy).second) return false;
  }
  return true;
}

NerveMap::NerveMap(const geom::TorusGrid& grid, std::vector<Pose> copies)
    : grid_(&grid), copies_(std::move(copies)) {
  if (grid.dim() != 3) throw PreconditionError("NerveMap: grid must be 3-dimensional");
  regions_ = geom::region_components(grid, true, true);
  for (const auto& info : regions_.info)
    if (info.winding != 0 || info.extent >= grid.res())
      throw PreconditionError("NerveMap: foam regions are not separated");

  // Distance (face steps) from the region boundary, by multi-source BFS.
  const std::size_t total = grid.size();
  std::vector<int> depth(total, -1);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < total; ++i) {
    for (int a = 0; a < 3 && depth[i] < 0; ++a)
      for (int dir : {-1, 1})
        if (grid[grid.neighbor(i, a, dir)] != grid[i]) {
          depth[i] = 0;
          queue.push_back(i);
          break;
        }
  }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (int a = 0; a < 3; ++a)
      for (int dir : {-1, 1}) {
        const std::size_t j = grid.neighbor(i, a, dir);
        if (depth[j] >= 0 || grid[j] != grid[i]) continue;
        depth[j] = depth[i] + 1;
        queue.push_back(j);
      }
  }
  std::vector<std::size_t> best(regions_.info.size(), total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto r = static_cast<std::size_t>(regions_.labels[i]);
    if (best[r] == total || depth[i] > depth[best[r]]) best[r] = i;
  }
  const int res = grid.res();
  for (std::size_t r = 0; r < best.size(); ++r) {
    std::array<long, 3> lifted{};
    for (int k = 0; k < 3; ++k)
      lifted[static_cast<std::size_t>(k)] =
          grid.coord(best[r], k) + static_cast<long>(res) * regions_.lifts[best[r] * 3 + static_cast<std::size_t>(k)];
    deepest_.push_back(lifted);
  }
}

NerveMap::Located NerveMap::locate(int copy, const Vec3& x) const {
  const auto& g = *grid_;
  const long res = g.res();
  const Vec3 z = copies_[static_cast<std::size_t>(copy)].unapply(x) * static_cast<double>(res);
  // Lifted cell -> (region, translate).
  const auto classify = [&](const std::array<long, 3>& cell, int& region,
                            std::array<long, 3>& translate) {
    int c[3];
    for (int k = 0; k < 3; ++k) {
      const long m = cell[static_cast<std::size_t>(k)] % res;
      c[k] = static_cast<int>(m < 0 ? m + res : m);
    }
    const std::size_t idx = g.index(c);
    region = regions_.labels[idx];
    for (int k = 0; k < 3; ++k) {
      const long base = c[k] + res * regions_.lifts[idx * 3 + static_cast<std::size_t>(k)];
      translate[static_cast<std::size_t>(k)] = (cell[static_cast<std::size_t>(k)] - base) / res;
    }
  };
  std::array<long, 3> home{};
  for (int k = 0; k < 3; ++k) home[static_cast<std::size_t>(k)] = static_cast<long>(std::floor(z[k]));
  Located out;
  classify(home, out.region, out.translate);

  const long reach = static_cast<long>(kClampCells);
  double dist = kClampCells;
  std::array<long, 3> cell{};
  for (long dx = -reach; dx <= reach; ++dx)
    for (long dy = -reach; dy <= reach; ++dy)
      for (long dz = -reach; dz <= reach; ++dz) {
        cell = {home[0] + dx, home[1] + dy, home[2] + dz};
        int region;
        std::array<long, 3> translate;
        classify(cell, region, translate);
        if (region == out.region && translate == out.translate) continue;
        // l-inf distance from z to the closed cell box.
        double d = 0.0;
        for (int k = 0; k < 3; ++k) {
          const double lo = static_cast<double>(cell[static_cast<std::size_t>(k)]);
          d = std::max(d, std::max({0.0, lo - z[k], z[k] - lo - 1.0}));
        }
        dist = std::min(dist, d);
      }
  out.weight = dist / static_cast<double>(res);
  return out;
}

int NerveMap::vertex(int copy, const Located& loc) {
  const auto key = std::make_tuple(copy, loc.region, loc.translate[0], loc.translate[1], loc.translate[2]);
  const auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  const double res = grid_->res();
  const auto& deep = deepest_[static_cast<std::size_t>(loc.region)];
  Vec3 y;
  for (int k = 0; k < 3; ++k)
    y[k] = (static_cast<double>(deep[static_cast<std::size_t>(k)]) + 0.5) / res +
           static_cast<double>(loc.translate[static_cast<std::size_t>(k)]);
  NerveVertex v;
  v.copy = copy;
  v.region = loc.region;
  v.translate = loc.translate;
  v.point = copies_[static_cast<std::size_t>(copy)].apply(y);
  const int id = static_cast<int>(complex_.vertices.size());
  complex_.vertices.push_back(v);
  index_.emplace(key, id);
  return id;
}

NerveMap::Image NerveMap::map(const Vec3& x) {
  Image out;
  double total = 0.0;
  std::vector<std::pair<int, double>> parts;
  for (int i = 0; i < copies(); ++i) {
    const Located loc = locate(i, x);
    if (loc.weight <= 0.0) continue;
    parts.emplace_back(vertex(i, loc), loc.weight);
    total += loc.weight;
  }
  if (parts.empty())
    throw PreconditionError("nerve_map: query (" + format_double(x.x) + ", " + format_double(x.y) +
                            ", " + format_double(x.z) + ") lies on copy " +
                            std::to_string(copies() - 1) + " and on every other copy");
  std::sort(parts.begin(), parts.end());
  for (const auto& [v, w] : parts) {
    out.vertices.push_back(v);
    out.weights.push_back(w / total);
    out.point += complex_.vertices[static_cast<std::size_t>(v)].point * (w / total);
  }
  return out;
}

void NerveMap::record(const Image& image) {
  if (simplex_index_.emplace(image.vertices, 0).second) complex_.simplices.push_back(image.vertices);
}

NerveMapResult nerve_map(const SeparatorTower& tower, const std::vector<Vec3>& queries) {
  NerveMap map(tower.grid, tower.copies);
  NerveMapResult out;
  for (const auto& x : queries) {
    const auto image = map.map(x);
    map.record(image);
    const double d = linf(image.point - x);
    out.images.push_back(image.point);
    out.displacement.push_back(d);
    out.sup_displacement = std::max(out.sup_displacement, d);
  }
  out.complex = map.complex();
  std::sort(out.complex.simplices.begin(), out.complex.simplices.end());
  return out;
}

}  // namespace sepwidth::kinsep
