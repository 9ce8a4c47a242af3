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
#include "cgrx/raycast.hpp"
#include "cgrx/scene.hpp"
#include "cgrx/types.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace cgrx {

enum class Variant : std::uint8_t { Naive, Optimized };

const char* toString(Variant v);
Variant variantFromName(std::string_view name);

/// Bucket representatives as materialized by the naive construction: one
/// triangle per distinct bucket maximum, plus row markers at x = -1 and plane
/// markers at (x, y) = (-1, -1) for the first representative of each
/// row/plane. `sortedKeys` must be non-empty and sorted.
SceneBuffer buildNaiveScene(std::span<const Key> sortedKeys, std::uint64_t bucketSize,
                            const KeyMapping& m);

/// Optimized construction: representatives whose successor key lies in
/// another row move to x_max, rows and planes end with an inserted
/// representative at x_max / (x_max, y_max), and a moved representative that
/// is alone in its row is flipped.
///
/// Array ends are clamped: bucket 0 has no previous representative and the
/// last key counts as movable. The last bucket never inserts an end-of-row
/// triangle; it does insert the end of the last plane, which z rays need.
SceneBuffer buildOptimizedScene(std::span<const Key> sortedKeys, std::uint64_t bucketSize,
                                const KeyMapping& m);

/// Per-lookup record of what the ray procedure did.
struct LocateTrace {
  std::uint8_t rays = 0;
  /// A back-face y hit ended the lookup without the final x ray.
  bool flipShortcut = false;
  /// Set when the shortcut was cross-checked with the full x ray and the
  /// two disagreed.
  bool flipMismatch = false;
};

/// Finds the bucket of a key by casting axis rays into a representation.
class BucketLocator {
 public:
  BucketLocator() = default;
  BucketLocator(const SceneBuffer& scene, const RayCaster& caster, const KeyMapping& m, Key minRep,
                Key maxRep);

  /// Bucket whose key range holds `key`. Keys below the smallest
  /// representative map to bucket 0 without rays; keys above the largest
  /// return nothing.
  std::optional<BucketId> locate(Key key, LocateTrace* trace = nullptr, CastStats* stats = nullptr,
                                 bool verifyFlips = false) const;

  Key minRep() const { return minRep_; }
  Key maxRep() const { return maxRep_; }

 private:
  BucketId locateNaive(const GridPoint& p, LocateTrace& trace, CastStats* stats) const;
  BucketId locateOptimized(const GridPoint& p, LocateTrace& trace, CastStats* stats,
                           bool verifyFlips) const;
  BucketId resolve(PrimitiveIndex slot) const;
  Hit mustHit(const AxisRay& ray, LocateTrace& trace, CastStats* stats) const;
  std::optional<Hit> fire(const AxisRay& ray, LocateTrace& trace, CastStats* stats) const;

  const SceneBuffer* scene_ = nullptr;
  const RayCaster* caster_ = nullptr;
  KeyMapping mapping_;
  Key minRep_ = 0;
  Key maxRep_ = 0;
};

/// minRep/maxRep of a sorted key sequence: the last key of bucket 0 and the
/// last key overall.
std::pair<Key, Key> representativeRange(std::span<const Key> sortedKeys, std::uint64_t bucketSize);

} // namespace cgrx
