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

#include <cmath>

namespace cgrx {

const char* toString(Axis axis) {
  switch (axis) {
    case Axis::X:
      return "x";
    case Axis::Y:
      return "y";
    case Axis::Z:
      return "z";
  }
  return "?";
}

const char* toString(Backend backend) { return backend == Backend::Grid ? "grid" : "bvh"; }

Backend backendFromName(std::string_view name) {
  if (name == "grid") return Backend::Grid;
  if (name == "bvh") return Backend::Bvh;
  throw Error(ErrorCode::UnsupportedConfig, "unknown backend '" + std::string(name) + "'");
}

Vec3 AxisRay::origin(const KeyMapping& m) const {
  Vec3 o = worldCoords(start, m);
  const double scale[3] = {1.0, static_cast<double>(m.yScale), static_cast<double>(m.zScale)};
  const int a = static_cast<int>(axis);
  o[a] -= 0.5 * scale[a];
  return o;
}

std::unique_ptr<RayCaster> makeCaster(Backend backend, const SceneBuffer& scene,
                                      const KeyMapping& mapping) {
  if (backend == Backend::Grid) return std::make_unique<GridOracle>(scene, mapping);
  return std::make_unique<Bvh>(scene, mapping);
}

std::optional<TriangleHit> intersectTriangle(const Vec3& origin, const Vec3& dir,
                                             const std::array<Vec3, 3>& v) {
  constexpr double kEps = 1e-7;
  auto sub = [](const Vec3& a, const Vec3& b) {
    return Vec3{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  };
  auto cross = [](const Vec3& a, const Vec3& b) {
    return Vec3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  auto dot = [](const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };

  const Vec3 e1 = sub(v[1], v[0]);
  const Vec3 e2 = sub(v[2], v[0]);
  const Vec3 p = cross(dir, e2);
  const double det = dot(e1, p);
  if (std::abs(det) < 1e-12) return std::nullopt;
  const double inv = 1.0 / det;

  const Vec3 s = sub(origin, v[0]);
  const double u = dot(s, p) * inv;
  if (u < -kEps || u > 1.0 + kEps) return std::nullopt;

  const Vec3 q = cross(s, e1);
  const double w = dot(dir, q) * inv;
  if (w < -kEps || u + w > 1.0 + kEps) return std::nullopt;

  const double t = dot(e2, q) * inv;
  const bool front = dot(dir, cross(e1, e2)) < 0.0;
  return TriangleHit{t, u, w, front};
}

} // namespace cgrx
