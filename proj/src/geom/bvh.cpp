#include "sepwidth/geom/bvh.hpp"

#include <algorithm>
#include <numeric>

namespace sepwidth::geom {

namespace {
constexpr int kLeafSize = 4;

bool segment_hits_box(const Vec3& p, const Vec3& q, const Box3& box) {
  double t0 = 0.0, t1 = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double d = q[k] - p[k];
    if (d == 0.0) {
      if (p[k] < box.lo[k] || p[k] > box.hi[k]) return false;
      continue;
    }
    double a = (box.lo[k] - p[k]) / d, b = (box.hi[k] - p[k]) / d;
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    if (t0 > t1) return false;
  }
  return true;
}

Box3 padded(Box3 b) {
  // Inflate slightly so near-touching contacts reach the exact predicates.
  for (int k = 0; k < 3; ++k) {
    const double pad = 1e-9 * (1.0 + std::abs(b.lo[k]) + std::abs(b.hi[k]));
    b.lo[k] -= pad;
    b.hi[k] += pad;
  }
  return b;
}
}  // namespace

MeshBvh::MeshBvh(const TriMesh& mesh) {
  tris_.reserve(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) tris_.push_back(mesh.triangle(i));
  for (const auto& t : tris_) {
    boxes_.push_back(padded(t.bounds()));
    centers_.push_back((t.a + t.b + t.c) * (1.0 / 3.0));
  }
  order_.resize(tris_.size());
  std::iota(order_.begin(), order_.end(), 0);
  if (!tris_.empty()) build(0, static_cast<int>(tris_.size()), 0);
}

const Box3& MeshBvh::bounds() const {
  static const Box3 kEmpty;
  return nodes_.empty() ? kEmpty : nodes_[0].box;
}

int MeshBvh::build(int first, int count, int depth) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back({});
  Box3 box, centers;
  for (int i = first; i < first + count; ++i) {
    const auto k = static_cast<std::size_t>(order_[static_cast<std::size_t>(i)]);
    box.extend(boxes_[k].lo);
    box.extend(boxes_[k].hi);
    centers.extend(centers_[k]);
  }
  nodes_[static_cast<std::size_t>(id)].box = box;
  if (count <= kLeafSize || depth > 60) {
    nodes_[static_cast<std::size_t>(id)].first = first;
    nodes_[static_cast<std::size_t>(id)].count = count;
    return id;
  }
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (centers.hi[k] - centers.lo[k] > centers.hi[axis] - centers.lo[axis]) axis = k;
  const int half = count / 2;
  auto begin = order_.begin() + first;
  std::nth_element(begin, begin + half, begin + count, [&](int a, int b) {
    const double ca = centers_[static_cast<std::size_t>(a)][axis];
    const double cb = centers_[static_cast<std::size_t>(b)][axis];
    return ca < cb || (ca == cb && a < b);
  });
  const int left = build(first, half, depth + 1);
  const int right = build(first + half, count - half, depth + 1);
  nodes_[static_cast<std::size_t>(id)].left = left;
  nodes_[static_cast<std::size_t>(id)].right = right;
  return id;
}

void MeshBvh::query_segment(const Vec3& p, const Vec3& q,
                            const std::function<void(int)>& visit) const {
  if (nodes_.empty()) return;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (!segment_hits_box(p, q, node.box)) continue;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int t = order_[static_cast<std::size_t>(i)];
        if (segment_hits_box(p, q, boxes_[static_cast<std::size_t>(t)])) visit(t);
      }
    } else {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }
}

void MeshBvh::query_box(const Box3& box, const std::function<void(int)>& visit) const {
  if (nodes_.empty()) return;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    const Node& node = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (!node.box.overlaps(box)) continue;
    if (node.left < 0) {
      for (int i = node.first; i < node.first + node.count; ++i) {
        const int t = order_[static_cast<std::size_t>(i)];
        if (boxes_[static_cast<std::size_t>(t)].overlaps(box)) visit(t);
      }
    } else {
      stack.push_back(node.right);
      stack.push_back(node.left);
    }
  }
}

}  // namespace sepwidth::geom
