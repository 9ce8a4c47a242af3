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

#include "cgrx/representation.hpp"

#include <algorithm>
#include <stdexcept>

namespace cgrx {

const char* toString(Variant v) { return v == Variant::Naive ? "naive" : "opt"; }

Variant variantFromName(std::string_view name) {
  if (name == "naive") return Variant::Naive;
  if (name == "opt" || name == "optimized") return Variant::Optimized;
  throw Error(ErrorCode::UnsupportedConfig, "unknown variant '" + std::string(name) + "'");
}

std::pair<Key, Key> representativeRange(std::span<const Key> sortedKeys, std::uint64_t bucketSize) {
  if (sortedKeys.empty()) throw Error(ErrorCode::EmptyKeySet, "key set is empty");
  const std::size_t firstRep = std::min<std::uint64_t>(bucketSize, sortedKeys.size()) - 1;
  return {sortedKeys[firstRep], sortedKeys.back()};
}

namespace {

struct Frame {
  std::uint64_t n;
  std::uint64_t numBuckets;
  bool multiLine;
  bool multiPlane;
};

Frame frameFor(std::span<const Key> keys, std::uint64_t bucketSize, const KeyMapping& m) {
  if (keys.empty()) throw Error(ErrorCode::EmptyKeySet, "key set is empty");
  if (bucketSize == 0) throw Error(ErrorCode::InvalidBucketSize, "bucket size must be >= 1");
  const auto [minRep, maxRep] = representativeRange(keys, bucketSize);
  const GridPoint lo = mapKey(minRep, m);
  const GridPoint hi = mapKey(maxRep, m);
  const std::uint64_t n = keys.size();
  return Frame{n, (n + bucketSize - 1) / bucketSize, !sameRow(lo, hi), !samePlane(lo, hi)};
}

std::size_t repIndex(BucketId b, std::uint64_t bucketSize, std::uint64_t n) {
  return static_cast<std::size_t>(std::min((b + 1) * bucketSize, n) - 1);
}

} // namespace

SceneBuffer buildNaiveScene(std::span<const Key> keys, std::uint64_t bucketSize,
                            const KeyMapping& m) {
  const Frame f = frameFor(keys, bucketSize, m);
  const std::uint64_t nb = f.numBuckets;
  SceneBuffer scene((1 + f.multiLine + f.multiPlane) * nb, nb, Layout::Naive, f.multiLine,
                    f.multiPlane);

  for (BucketId b = 0; b < nb; ++b) {
    const std::size_t repIdx = repIndex(b, bucketSize, f.n);
    const Key rep = keys[repIdx];
    const GridPoint r = mapKey(rep, m);
    const bool hasPrev = b > 0;
    const Key prevRep = hasPrev ? keys[repIndex(b - 1, bucketSize, f.n)] : 0;
    const GridPoint prev = mapKey(prevRep, m);

    if (!hasPrev || rep != prevRep) {
      scene.place(b, Triangle{r, false, TriangleRole::Representative});
    }
    if (f.multiLine && (!hasPrev || !sameRow(r, prev))) {
      scene.place(nb + b, Triangle{{-1, r.y, r.z}, false, TriangleRole::RowMarker});
    }
    if (f.multiPlane && (!hasPrev || !samePlane(r, prev))) {
      scene.place(2 * nb + b, Triangle{{-1, -1, r.z}, false, TriangleRole::PlaneMarker});
    }
  }
  return scene;
}

SceneBuffer buildOptimizedScene(std::span<const Key> keys, std::uint64_t bucketSize,
                                const KeyMapping& m) {
  const Frame f = frameFor(keys, bucketSize, m);
  const std::uint64_t nb = f.numBuckets;
  const std::int64_t xMax = m.xMax();
  const std::int64_t yMax = m.yMax();
  SceneBuffer scene((1 + f.multiLine + f.multiPlane) * nb, nb, Layout::Optimized, f.multiLine,
                    f.multiPlane);

  for (BucketId b = 0; b < nb; ++b) {
    const std::size_t repIdx = repIndex(b, bucketSize, f.n);
    const Key rep = keys[repIdx];
    const GridPoint r = mapKey(rep, m);
    const bool hasPrev = b > 0;
    const bool isLast = b + 1 == nb;
    const Key prevRep = hasPrev ? keys[repIndex(b - 1, bucketSize, f.n)] : 0;
    const GridPoint prev = mapKey(prevRep, m);

    const bool hasNextKey = repIdx + 1 < f.n;
    const bool movable = !hasNextKey || !sameRow(mapKey(keys[repIdx + 1], m), r);
    // The last bucket may be partial, so its representative is the final key.
    const GridPoint nextRep =
        isLast ? r : mapKey(keys[std::min<std::size_t>(repIdx + bucketSize, f.n - 1)], m);

    const bool needsRep = !hasPrev || rep != prevRep || (movable && r.x != xMax);
    // A representative already at x_max ends its row by itself.
    const bool needsRowMark = !isLast && !movable && r.x != xMax && !sameRow(r, nextRep);
    // The last plane still needs an end for z rays. Its slot remaps past the
    // last bucket, but the moved last representative always shadows it.
    const bool needsPlaneMark = r.y != yMax && (isLast || !samePlane(r, nextRep));

    if (needsRep) {
      const std::int64_t x = movable ? xMax : r.x;
      const bool doFlip = movable && (!hasPrev || !sameRow(prev, r));
      scene.place(b, Triangle{{x, r.y, r.z}, doFlip, TriangleRole::Representative});
    }
    if (f.multiLine && needsRowMark) {
      scene.place(nb + b, Triangle{{xMax, r.y, r.z}, false, TriangleRole::RowMarker});
    }
    if (f.multiPlane && needsPlaneMark) {
      scene.place(2 * nb + b, Triangle{{xMax, yMax, r.z}, false, TriangleRole::PlaneMarker});
    }
  }
  return scene;
}

BucketLocator::BucketLocator(const SceneBuffer& scene, const RayCaster& caster, const KeyMapping& m,
                             Key minRep, Key maxRep)
    : scene_(&scene), caster_(&caster), mapping_(m), minRep_(minRep), maxRep_(maxRep) {}

std::optional<BucketId> BucketLocator::locate(Key key, LocateTrace* trace, CastStats* stats,
                                              bool verifyFlips) const {
  LocateTrace local;
  LocateTrace& t = trace ? *trace : local;
  t = LocateTrace{};
  if (key < minRep_) return BucketId{0};
  if (key > maxRep_) return std::nullopt;
  const GridPoint p = mapKey(key, mapping_);
  if (scene_->layout() == Layout::Naive) return locateNaive(p, t, stats);
  return locateOptimized(p, t, stats, verifyFlips);
}

std::optional<Hit> BucketLocator::fire(const AxisRay& ray, LocateTrace& trace,
                                       CastStats* stats) const {
  ++trace.rays;
  return caster_->cast(ray, stats);
}

Hit BucketLocator::mustHit(const AxisRay& ray, LocateTrace& trace, CastStats* stats) const {
  auto hit = fire(ray, trace, stats);
  if (!hit) {
    throw std::logic_error(std::string("representation invariant violated: ") + toString(ray.axis) +
                           " ray found no triangle");
  }
  return *hit;
}

BucketId BucketLocator::resolve(PrimitiveIndex slot) const {
  if (scene_->layout() == Layout::Naive) {
    if (slot >= scene_->numBuckets()) throw std::logic_error("x ray hit a naive marker");
    return slot;
  }
  const BucketId b = slotToAddressable(slot, scene_->numBuckets());
  if (b >= scene_->numBuckets()) throw std::logic_error("remapped slot past the last bucket");
  return b;
}

BucketId BucketLocator::locateNaive(const GridPoint& p, LocateTrace& trace,
                                    CastStats* stats) const {
  if (auto hit = fire({Axis::X, p, {}}, trace, stats)) return resolve(hit->primitiveIndex);

  if (auto row = fire({Axis::Y, {-1, p.y + 1, p.z}, {}}, trace, stats)) {
    const Hit rep = mustHit({Axis::X, {0, row->cell.y, p.z}, {}}, trace, stats);
    return resolve(rep.primitiveIndex);
  }

  const Hit plane = mustHit({Axis::Z, {-1, -1, p.z + 1}, {}}, trace, stats);
  const Hit row = mustHit({Axis::Y, {-1, 0, plane.cell.z}, {}}, trace, stats);
  const Hit rep = mustHit({Axis::X, {0, row.cell.y, plane.cell.z}, {}}, trace, stats);
  return resolve(rep.primitiveIndex);
}

BucketId BucketLocator::locateOptimized(const GridPoint& p, LocateTrace& trace, CastStats* stats,
                                        bool verifyFlips) const {
  const std::int64_t xMax = mapping_.xMax();
  const std::int64_t yMax = mapping_.yMax();

  if (auto hit = fire({Axis::X, p, {}}, trace, stats)) return resolve(hit->primitiveIndex);

  // Every populated row ends with a triangle at x_max; a back-face hit means
  // that triangle is the only one in its row.
  auto finishRow = [&](const Hit& rowEnd, std::int64_t z) {
    if (!rowEnd.frontFace) {
      trace.flipShortcut = true;
      const BucketId b = resolve(rowEnd.primitiveIndex);
      if (verifyFlips) {
        const auto check = caster_->cast({Axis::X, {0, rowEnd.cell.y, z}, {}});
        if (!check || resolve(check->primitiveIndex) != b) trace.flipMismatch = true;
      }
      return b;
    }
    const Hit rep = mustHit({Axis::X, {0, rowEnd.cell.y, z}, {}}, trace, stats);
    return resolve(rep.primitiveIndex);
  };

  if (auto rowEnd = fire({Axis::Y, {xMax, p.y + 1, p.z}, {}}, trace, stats)) {
    return finishRow(*rowEnd, p.z);
  }

  const Hit planeEnd = mustHit({Axis::Z, {xMax, yMax, p.z + 1}, {}}, trace, stats);
  const Hit rowEnd = mustHit({Axis::Y, {xMax, 0, planeEnd.cell.z}, {}}, trace, stats);
  return finishRow(rowEnd, planeEnd.cell.z);
}

} // namespace cgrx
