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
#include <tuple>

namespace cgrx {

namespace {

// (p1, p2, along) for each axis.
std::array<std::int64_t, 3> project(const GridPoint& p, Axis axis) {
  switch (axis) {
    case Axis::X:
      return {p.z, p.y, p.x};
    case Axis::Y:
      return {p.z, p.x, p.y};
    case Axis::Z:
      return {p.y, p.x, p.z};
  }
  return {};
}

double axisScale(const KeyMapping& m, Axis axis) {
  switch (axis) {
    case Axis::X:
      return 1.0;
    case Axis::Y:
      return static_cast<double>(m.yScale);
    case Axis::Z:
      return static_cast<double>(m.zScale);
  }
  return 1.0;
}

} // namespace

GridOracle::GridOracle(const SceneBuffer& scene, const KeyMapping& mapping)
    : scene_(&scene), mapping_(mapping) {
  for (int a = 0; a < 3; ++a) lines_[a].reserve(scene.triangleCount());
  for (PrimitiveIndex i = 0; i < scene.size(); ++i) {
    const auto& tri = scene[i];
    if (!tri) continue;
    for (int a = 0; a < 3; ++a) {
      const auto c = project(tri->anchor, static_cast<Axis>(a));
      lines_[a].push_back(Line{c[0], c[1], c[2], i});
    }
  }
  for (auto& lines : lines_) {
    std::sort(lines.begin(), lines.end(), [](const Line& l, const Line& r) {
      return std::tie(l.p1, l.p2, l.along) < std::tie(r.p1, r.p2, r.along);
    });
  }
}

std::optional<Hit> GridOracle::cast(const AxisRay& ray, CastStats* stats) const {
  if (stats) ++stats->rays;
  const auto& lines = lines_[static_cast<int>(ray.axis)];
  const auto c = project(ray.start, ray.axis);
  auto it = std::lower_bound(lines.begin(), lines.end(), c, [](const Line& l, const auto& key) {
    return std::tie(l.p1, l.p2, l.along) < std::tie(key[0], key[1], key[2]);
  });
  if (it == lines.end() || it->p1 != c[0] || it->p2 != c[1]) return std::nullopt;
  if (stats) ++stats->trianglesTested;

  const double scale = axisScale(mapping_, ray.axis);
  const double t = (static_cast<double>(it->along - c[2]) + 0.5) * scale;
  if (ray.tMax && t > *ray.tMax) return std::nullopt;

  const Triangle& tri = *(*scene_)[it->slot];
  Hit hit;
  hit.primitiveIndex = it->slot;
  hit.cell = tri.anchor;
  hit.point = worldCoords(tri.anchor, mapping_);
  hit.t = t;
  hit.frontFace = !tri.flipped;
  return hit;
}

std::uint64_t GridOracle::memoryBytes() const {
  std::uint64_t bytes = 0;
  for (const auto& lines : lines_) bytes += lines.size() * sizeof(Line);
  return bytes;
}

} // namespace cgrx
