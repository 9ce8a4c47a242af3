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
#include "cgrx/types.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace cgrx {

enum class TriangleRole : std::uint8_t { Representative, RowMarker, PlaneMarker };

const char* toString(TriangleRole role);

struct Triangle {
  GridPoint anchor;
  /// Reversed winding. Rays along a positive axis see the back face.
  bool flipped = false;
  TriangleRole role = TriangleRole::Representative;

  friend bool operator==(const Triangle&, const Triangle&) = default;
};

enum class Layout : std::uint8_t { Naive, Optimized };

using Vec3 = std::array<double, 3>;

/// Triangle corners in world space, in stored (winding) order.
struct RealizedTriangle {
  std::array<Vec3, 3> vertices;

  Vec3 centroid() const;
  /// Unnormalized cross(v1 - v0, v2 - v0).
  Vec3 normal() const;
};

/// Half-size of the canonical triangle; corners sit at delta*(2,-1,-1),
/// delta*(-1,-1,2) and delta*(-1,2,-1) around the anchor.
inline constexpr double kTriangleDelta = 0.1;

/// Corner offsets relative to the anchor, in stored order. The canonical
/// winding has its normal along -(1,1,1), so rays along +x/+y/+z hit the
/// front face; flipping reverses the last two corners.
std::array<Vec3, 3> triangleOffsets(bool flipped);

/// Small triangle whose centroid is the scaled anchor (x, y, z).
RealizedTriangle mkTri(std::int64_t x, std::int64_t y, std::int64_t z, bool flipped,
                       const KeyMapping& m);

/// Maps the primitive index of an optimized-layout hit back to its bucket.
/// Slots in the second and third block belong to the following bucket.
BucketId slotToAddressable(PrimitiveIndex slot, std::uint64_t numBuckets);

/// Ordered triangle buffer; a slot's position is its primitive index.
/// Unfilled slots are absent and never intersect a ray.
class SceneBuffer {
 public:
  SceneBuffer() = default;
  SceneBuffer(std::uint64_t slotCount, std::uint64_t numBuckets, Layout layout, bool multiLine,
              bool multiPlane);

  void place(PrimitiveIndex slot, const Triangle& tri);
  void clear(PrimitiveIndex slot);

  const std::optional<Triangle>& operator[](PrimitiveIndex slot) const { return slots_[slot]; }
  std::uint64_t size() const { return slots_.size(); }
  /// Number of non-absent slots.
  std::uint64_t triangleCount() const { return count_; }

  std::uint64_t numBuckets() const { return numBuckets_; }
  Layout layout() const { return layout_; }
  bool multiLine() const { return multiLine_; }
  bool multiPlane() const { return multiPlane_; }

  /// Throws std::logic_error if two present slots share an anchor.
  void checkDistinctAnchors() const;

 private:
  std::vector<std::optional<Triangle>> slots_;
  std::uint64_t count_ = 0;
  std::uint64_t numBuckets_ = 0;
  Layout layout_ = Layout::Naive;
  bool multiLine_ = false;
  bool multiPlane_ = false;
};

/// Debug dump: `slot,anchor_x,anchor_y,anchor_z,flipped,role` per present slot.
void writeSceneDump(std::ostream& out, const SceneBuffer& scene);

} // namespace cgrx
