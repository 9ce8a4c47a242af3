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

#include "cgrx/scene.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace cgrx {

const char* toString(TriangleRole role) {
  switch (role) {
    case TriangleRole::Representative:
      return "rep";
    case TriangleRole::RowMarker:
      return "rowmark";
    case TriangleRole::PlaneMarker:
      return "planemark";
  }
  return "?";
}

Vec3 RealizedTriangle::centroid() const {
  Vec3 c{};
  for (const auto& v : vertices) {
    for (int a = 0; a < 3; ++a) c[a] += v[a];
  }
  for (auto& x : c) x /= 3.0;
  return c;
}

Vec3 RealizedTriangle::normal() const {
  Vec3 e1{}, e2{};
  for (int a = 0; a < 3; ++a) {
    e1[a] = vertices[1][a] - vertices[0][a];
    e2[a] = vertices[2][a] - vertices[0][a];
  }
  return {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
          e1[0] * e2[1] - e1[1] * e2[0]};
}

std::array<Vec3, 3> triangleOffsets(bool flipped) {
  constexpr double d = kTriangleDelta;
  const Vec3 a{2 * d, -d, -d};
  const Vec3 b{-d, -d, 2 * d};
  const Vec3 c{-d, 2 * d, -d};
  if (flipped) return {a, c, b};
  return {a, b, c};
}

RealizedTriangle mkTri(std::int64_t x, std::int64_t y, std::int64_t z, bool flipped,
                       const KeyMapping& m) {
  const Vec3 anchor = worldCoords(GridPoint{x, y, z}, m);
  RealizedTriangle tri;
  const auto offsets = triangleOffsets(flipped);
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < 3; ++a) tri.vertices[i][a] = anchor[a] + offsets[i][a];
  }
  return tri;
}

BucketId slotToAddressable(PrimitiveIndex slot, std::uint64_t numBuckets) {
  if (slot >= 2 * numBuckets) return slot - 2 * numBuckets + 1;
  if (slot >= numBuckets) return slot - numBuckets + 1;
  return slot;
}

SceneBuffer::SceneBuffer(std::uint64_t slotCount, std::uint64_t numBuckets, Layout layout,
                         bool multiLine, bool multiPlane)
    : slots_(slotCount),
      numBuckets_(numBuckets),
      layout_(layout),
      multiLine_(multiLine),
      multiPlane_(multiPlane) {}

void SceneBuffer::place(PrimitiveIndex slot, const Triangle& tri) {
  if (slot >= slots_.size()) throw std::out_of_range("scene slot out of range");
  if (!slots_[slot]) ++count_;
  slots_[slot] = tri;
}

void SceneBuffer::clear(PrimitiveIndex slot) {
  if (slot >= slots_.size()) throw std::out_of_range("scene slot out of range");
  if (slots_[slot]) --count_;
  slots_[slot].reset();
}

void SceneBuffer::checkDistinctAnchors() const {
  std::vector<std::pair<GridPoint, PrimitiveIndex>> anchors;
  anchors.reserve(count_);
  for (PrimitiveIndex i = 0; i < slots_.size(); ++i) {
    if (slots_[i]) anchors.emplace_back(slots_[i]->anchor, i);
  }
  std::sort(anchors.begin(), anchors.end());
  for (std::size_t i = 1; i < anchors.size(); ++i) {
    if (anchors[i].first != anchors[i - 1].first) continue;
    const GridPoint& p = anchors[i].first;
    throw std::logic_error("slots " + std::to_string(anchors[i - 1].second) + " and " +
                           std::to_string(anchors[i].second) + " share anchor (" +
                           std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                           std::to_string(p.z) + ")");
  }
}

void writeSceneDump(std::ostream& out, const SceneBuffer& scene) {
  for (PrimitiveIndex i = 0; i < scene.size(); ++i) {
    const auto& s = scene[i];
    if (!s) continue;
    out << i << ',' << s->anchor.x << ',' << s->anchor.y << ',' << s->anchor.z << ','
        << (s->flipped ? 1 : 0) << ',' << toString(s->role) << '\n';
  }
}

} // namespace cgrx
