/*
   Copyright 2026 The cgrx Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "cgrx/raycast.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cgrx {

namespace {

// Relative slack covering rounding of large world coordinates.
double roundingPad(double v) { return std::abs(v) * 0x1p-48 + 1e-6; }

double axisScale(const KeyMapping& m, int axis) {
  if (axis == 1) return static_cast<double>(m.yScale);
  if (axis == 2) return static_cast<double>(m.zScale);
  return 1.0;
}

std::int64_t component(const GridPoint& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

} // namespace

void Aabb::extend(const Aabb& o) {
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::min(lo[a], o.lo[a]);
    hi[a] = std::max(hi[a], o.hi[a]);
  }
}

bool Aabb::contains(const Aabb& o) const {
  for (int a = 0; a < 3; ++a) {
    if (o.lo[a] < lo[a] || o.hi[a] > hi[a]) return false;
  }
  return true;
}

int Aabb::longestAxis() const {
  int best = 0;
  for (int a = 1; a < 3; ++a) {
    if (hi[a] - lo[a] > hi[best] - lo[best]) best = a;
  }
  return best;
}

Aabb triangleBounds(const GridPoint& anchor, const KeyMapping& m) {
  const Vec3 w = worldCoords(anchor, m);
  Aabb box;
  for (int a = 0; a < 3; ++a) {
    const double pad = 2.5 * kTriangleDelta + roundingPad(w[a]);
    box.lo[a] = w[a] - pad;
    box.hi[a] = w[a] + pad;
  }
  return box;
}

Bvh::Bvh(const SceneBuffer& scene, const KeyMapping& mapping) : scene_(&scene), mapping_(mapping) {
  prims_.reserve(scene.triangleCount());
  for (PrimitiveIndex i = 0; i < scene.size(); ++i) {
    if (scene[i]) prims_.push_back(i);
  }
  if (prims_.empty()) return;

  std::vector<Vec3> centroids(scene.size());
  for (PrimitiveIndex slot : prims_) centroids[slot] = worldCoords(scene[slot]->anchor, mapping);

  nodes_.reserve(2 * (prims_.size() / kMaxLeafSize + 1));
  nodes_.emplace_back();
  build(0, 0, static_cast<std::uint32_t>(prims_.size()), centroids);
}

std::uint32_t Bvh::build(std::uint32_t nodeIndex, std::uint32_t begin, std::uint32_t end,
                         std::vector<Vec3>& centroids) {
  Aabb box = triangleBounds((*scene_)[prims_[begin]]->anchor, mapping_);
  for (std::uint32_t i = begin + 1; i < end; ++i) {
    box.extend(triangleBounds((*scene_)[prims_[i]]->anchor, mapping_));
  }
  nodes_[nodeIndex].box = box;

  const std::uint32_t count = end - begin;
  if (count <= kMaxLeafSize) {
    nodes_[nodeIndex].first = begin;
    nodes_[nodeIndex].count = count;
    return nodeIndex;
  }

  const int axis = box.longestAxis();
  const std::uint32_t mid = begin + count / 2;
  std::nth_element(
      prims_.begin() + begin, prims_.begin() + mid, prims_.begin() + end,
      [&](PrimitiveIndex a, PrimitiveIndex b) { return centroids[a][axis] < centroids[b][axis]; });

  const auto left = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  nodes_.emplace_back();
  nodes_[nodeIndex].first = left;
  nodes_[nodeIndex].count = 0;
  build(left, begin, mid, centroids);
  build(left + 1, mid, end, centroids);
  return nodeIndex;
}

std::optional<Hit> Bvh::cast(const AxisRay& ray, CastStats* stats) const {
  if (stats) ++stats->rays;
  if (nodes_.empty()) return std::nullopt;

  const int a = static_cast<int>(ray.axis);
  const int p = (a + 1) % 3;
  const int q = (a + 2) % 3;
  const Vec3 origin = ray.origin(mapping_);
  Vec3 dir{0.0, 0.0, 0.0};
  dir[a] = 1.0;
  const double tLimit = ray.tMax.value_or(std::numeric_limits<double>::infinity());
  const std::int64_t startAlong = component(ray.start, a);
  const double scaleA = axisScale(mapping_, a);
  const double scaleP = axisScale(mapping_, p);
  const double scaleQ = axisScale(mapping_, q);

  std::optional<Hit> best;
  std::int64_t bestDelta = 0;

  // Distance to the box entry along the ray, or nothing if the box is missed.
  auto enter = [&](const Aabb& box) -> std::optional<double> {
    if (origin[p] < box.lo[p] || origin[p] > box.hi[p]) return std::nullopt;
    if (origin[q] < box.lo[q] || origin[q] > box.hi[q]) return std::nullopt;
    if (box.hi[a] < origin[a]) return std::nullopt;
    const double entry = std::max(0.0, box.lo[a] - origin[a]);
    const double pad = roundingPad(origin[a]) + roundingPad(box.lo[a]);
    if (entry > tLimit + pad) return std::nullopt;
    if (best && entry > best->t + 1.0 + pad) return std::nullopt;
    return entry;
  };

  std::uint32_t stack[128];
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const BvhNode& node = nodes_[stack[--top]];
    if (stats) ++stats->nodesVisited;
    if (!enter(node.box)) continue;

    if (!node.isLeaf()) {
      const auto nearL = enter(nodes_[node.first].box);
      const auto nearR = enter(nodes_[node.first + 1].box);
      // Push the farther child first so the nearer one is visited next.
      if (nearL && nearR) {
        const bool leftFirst = *nearL <= *nearR;
        stack[top++] = leftFirst ? node.first + 1 : node.first;
        stack[top++] = leftFirst ? node.first : node.first + 1;
      } else if (nearL) {
        stack[top++] = node.first;
      } else if (nearR) {
        stack[top++] = node.first + 1;
      }
      continue;
    }

    for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
      const PrimitiveIndex slot = prims_[i];
      const Triangle& tri = *(*scene_)[slot];
      if (stats) ++stats->trianglesTested;

      // Intersect in the triangle's local frame. Offsets between lattice
      // points are exact integers, so the test never loses the small
      // triangle against large absolute coordinates.
      const std::int64_t delta = component(tri.anchor, a) - startAlong;
      Vec3 local{};
      local[a] = -(static_cast<double>(delta) + 0.5) * scaleA;
      local[p] = static_cast<double>(component(ray.start, p) - component(tri.anchor, p)) * scaleP;
      local[q] = static_cast<double>(component(ray.start, q) - component(tri.anchor, q)) * scaleQ;

      const auto th = intersectTriangle(local, dir, triangleOffsets(tri.flipped));
      if (!th || th->t <= 0.0 || th->t > tLimit) continue;
      if (best && delta >= bestDelta) continue;

      Hit hit;
      hit.primitiveIndex = slot;
      hit.cell = ray.start;
      if (a == 0) hit.cell.x = tri.anchor.x;
      if (a == 1) hit.cell.y = tri.anchor.y;
      if (a == 2) hit.cell.z = tri.anchor.z;
      const Vec3 w = worldCoords(tri.anchor, mapping_);
      for (int k = 0; k < 3; ++k) hit.point[k] = w[k] + local[k] + th->t * dir[k];
      hit.t = th->t;
      hit.frontFace = th->frontFace;
      best = hit;
      bestDelta = delta;
    }
  }
  return best;
}

std::uint64_t Bvh::memoryBytes() const {
  return nodes_.size() * sizeof(BvhNode) + prims_.size() * sizeof(PrimitiveIndex);
}

} // namespace cgrx
