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

#pragma once

#include "cgrx/keymap.hpp"
#include "cgrx/scene.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace cgrx {

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

const char* toString(Axis axis);

/// Ray along the positive direction of `axis`. The ray is anchored at the
/// lattice point `start` and begins half a grid cell before it, so every
/// triangle whose anchor lies on the ray at or after `start` is hit at t > 0.
struct AxisRay {
  Axis axis = Axis::X;
  GridPoint start;
  /// Length limit in world (scaled) units, measured from the ray origin.
  std::optional<double> tMax;

  /// World-space origin of the ray.
  Vec3 origin(const KeyMapping& m) const;
};

struct Hit {
  PrimitiveIndex primitiveIndex = 0;
  /// Lattice position of the intersection (the hit triangle's anchor).
  GridPoint cell;
  /// World-space intersection point.
  Vec3 point{};
  double t = 0.0;
  bool frontFace = true;
};

/// Per-caller counters. Not shared between threads; aggregate with +=.
struct CastStats {
  std::uint64_t rays = 0;
  std::uint64_t nodesVisited = 0;
  std::uint64_t trianglesTested = 0;

  CastStats& operator+=(const CastStats& o) {
    rays += o.rays;
    nodesVisited += o.nodesVisited;
    trianglesTested += o.trianglesTested;
    return *this;
  }
};

/// Closest-hit query service over an immutable scene.
class RayCaster {
 public:
  virtual ~RayCaster() = default;

  /// Closest hit with t in (0, tMax], or nothing.
  virtual std::optional<Hit> cast(const AxisRay& ray, CastStats* stats = nullptr) const = 0;

  /// Bytes held by the acceleration structure itself.
  virtual std::uint64_t memoryBytes() const = 0;
};

enum class Backend : std::uint8_t { Grid, Bvh };

const char* toString(Backend backend);
Backend backendFromName(std::string_view name);

/// Builds the requested backend. The scene must outlive the caster.
std::unique_ptr<RayCaster> makeCaster(Backend backend, const SceneBuffer& scene,
                                      const KeyMapping& mapping);

/// Exact backend: integer comparisons over triangle anchors.
class GridOracle final : public RayCaster {
 public:
  GridOracle(const SceneBuffer& scene, const KeyMapping& mapping);

  std::optional<Hit> cast(const AxisRay& ray, CastStats* stats = nullptr) const override;
  std::uint64_t memoryBytes() const override;

 private:
  struct Line {
    std::int64_t p1;
    std::int64_t p2;
    std::int64_t along;
    PrimitiveIndex slot;
  };

  const SceneBuffer* scene_;
  KeyMapping mapping_;
  // One sorted list per axis, ordered by (perpendicular coords, coordinate along the axis).
  std::array<std::vector<Line>, 3> lines_;
};

/// Axis-aligned box in world space.
struct Aabb {
  Vec3 lo{};
  Vec3 hi{};

  void extend(const Aabb& o);
  bool contains(const Aabb& o) const;
  int longestAxis() const;
};

/// Conservative world bounds of the triangle anchored at `anchor`. Padded so
/// that rounding of large coordinates never excludes the true geometry.
Aabb triangleBounds(const GridPoint& anchor, const KeyMapping& m);

struct BvhNode {
  Aabb box;
  /// Inner node: index of the left child; the right child is left + 1.
  /// Leaf: first entry in the BVH's primitive list.
  std::uint32_t first = 0;
  /// Zero for inner nodes.
  std::uint32_t count = 0;

  bool isLeaf() const { return count > 0; }
};

/// Binary BVH over the present triangles, built by median split on the
/// longest box axis with at most kMaxLeafSize triangles per leaf.
class Bvh final : public RayCaster {
 public:
  static constexpr std::uint32_t kMaxLeafSize = 4;

  Bvh(const SceneBuffer& scene, const KeyMapping& mapping);

  std::optional<Hit> cast(const AxisRay& ray, CastStats* stats = nullptr) const override;
  std::uint64_t memoryBytes() const override;

  const std::vector<BvhNode>& nodes() const { return nodes_; }
  /// Slots referenced by leaves, in leaf order.
  const std::vector<PrimitiveIndex>& primitives() const { return prims_; }
  bool empty() const { return nodes_.empty(); }

 private:
  std::uint32_t build(std::uint32_t nodeIndex, std::uint32_t begin, std::uint32_t end,
                      std::vector<Vec3>& centroids);

  const SceneBuffer* scene_;
  KeyMapping mapping_;
  std::vector<BvhNode> nodes_;
  std::vector<PrimitiveIndex> prims_;
};

struct TriangleHit {
  double t;
  double u;
  double v;
  bool frontFace;
};

/// Moller-Trumbore intersection with inclusive edges (tolerance 1e-7).
/// Front face iff dot(dir, cross(v1 - v0, v2 - v0)) < 0. Rays parallel to
/// the triangle plane miss.
std::optional<TriangleHit> intersectTriangle(const Vec3& origin, const Vec3& dir,
                                             const std::array<Vec3, 3>& v);

} // namespace cgrx
