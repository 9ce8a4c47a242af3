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

#include <cgrx/cgrx_index.hpp>
#include <cgrx/cgrxu_index.hpp>
#include <cgrx/keymap.hpp>
#include <cgrx/raycast.hpp>
#include <cgrx/scene.hpp>
#include <cgrx/types.hpp>
#include <cgrx/workload.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <unordered_set>
#include <utility>
#include <vector>

namespace cgrx::testing {

/// Builds pairs from parallel key and rowID lists.
inline std::vector<Entry> zipPairs(const std::vector<Key>& keys, const std::vector<RowId>& rows) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < keys.size(); ++i) out.push_back({keys[i], rows[i]});
  return out;
}

/// Single-plane example: four rows of the 3/2/59 mapping, bucket size 3.
/// Key 2 is stored under rowID 3 and key 6 under rowID 8.
inline std::vector<Entry> singlePlaneExample() {
  return zipPairs({0, 2, 5, 6, 12, 17, 18, 19, 19, 19, 20, 22, 31},
                  {4, 3, 11, 8, 0, 6, 1, 9, 2, 12, 5, 10, 7});
}

/// Three-plane example; key 19 occurs five times across buckets 2 and 3.
inline std::vector<Entry> threePlaneExample() {
  return zipPairs({0, 2, 5, 6, 12, 17, 18, 19, 19, 19, 19, 19, 22, 60, 93},
                  {14, 3, 7, 8, 1, 12, 0, 2, 5, 9, 10, 13, 4, 11, 6});
}

/// Thirteen keys for the fine-grained structure; key 4 sits at slot 7.
inline std::vector<Entry> fineGrainedExample() {
  return zipPairs({1, 4, 6, 9, 10, 14, 17, 20, 21, 26, 27, 30, 31},
                  {3, 7, 0, 12, 5, 9, 1, 11, 2, 6, 10, 4, 8});
}

/// Brute-force answers from a sorted copy of the pairs.
class Reference {
 public:
  explicit Reference(std::vector<Entry> pairs) : sorted_(std::move(pairs)) {
    std::sort(sorted_.begin(), sorted_.end(), EntryLess{});
  }

  std::vector<RowId> point(Key key) const {
    std::vector<RowId> rows;
    for (auto it = lowerBound(key); it != sorted_.end() && it->key == key; ++it) {
      rows.push_back(it->rowId);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  }

  std::vector<RowId> range(Key l, Key u) const {
    std::vector<RowId> rows;
    if (l > u) return rows;
    for (auto it = lowerBound(l); it != sorted_.end() && it->key <= u; ++it) {
      rows.push_back(it->rowId);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
  }

  const std::vector<Entry>& sorted() const { return sorted_; }
  bool contains(Key k) const { return lowerBound(k) != sorted_.end() && lowerBound(k)->key == k; }

 private:
  std::vector<Entry>::const_iterator lowerBound(Key k) const {
    return std::lower_bound(sorted_.begin(), sorted_.end(), k,
                            [](const Entry& e, Key v) { return e.key < v; });
  }

  std::vector<Entry> sorted_;
};

inline std::vector<RowId> sortedRows(std::vector<RowId> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

/// Keys from a few random clusters, so that rows and planes are shared.
inline std::vector<Entry> clusteredPairs(Rng& rng, std::size_t n, unsigned width,
                                         double dupFraction) {
  const Key limit = width == 64 ? ~Key{0} : 0xffffffffull;
  std::vector<Entry> out;
  const std::size_t clusters = 1 + rng.below(8);
  std::vector<Key> centers(clusters);
  for (Key& c : centers) c = width == 64 ? rng.next() : rng.below(limit + 1);
  while (out.size() < n) {
    const Key c = centers[rng.below(clusters)];
    const Key spread = Key{1} << rng.below(20);
    const Key off = rng.below(spread);
    const Key k = c > limit - off ? c - off : c + off;
    out.push_back({k, out.size()});
  }
  if (dupFraction > 0.0) injectDuplicates(out, dupFraction, rng.next());
  return out;
}

/// Present anchors of a scene.
inline std::set<GridPoint> anchors(const SceneBuffer& scene) {
  std::set<GridPoint> out;
  for (PrimitiveIndex i = 0; i < scene.size(); ++i) {
    if (scene[i]) out.insert(scene[i]->anchor);
  }
  return out;
}

struct StructureViolations {
  std::uint64_t rowWithoutEnd = 0;
  std::uint64_t flippedNotSole = 0;
  std::uint64_t planeWithoutEnd = 0;
};

/// Re-derives, from the sorted keys alone, which rows hold bucket
/// representatives and checks the optimized scene against it.
inline StructureViolations checkOptimizedStructure(const CgrxIndex& idx) {
  StructureViolations v;
  const KeyMapping& m = idx.mapping();
  const auto entries = idx.store().entries();
  const std::uint64_t b = idx.config().bucketSize;
  std::map<std::pair<std::int64_t, std::int64_t>, std::set<Key>> repsPerRow;
  std::map<std::int64_t, std::set<std::int64_t>> rowsPerPlane;
  for (std::uint64_t i = 0; i < idx.numBuckets(); ++i) {
    const Key rep = entries[std::min<std::uint64_t>((i + 1) * b, entries.size()) - 1].key;
    const GridPoint p = mapKey(rep, m);
    repsPerRow[{p.z, p.y}].insert(rep);
    rowsPerPlane[p.z].insert(p.y);
  }
  const GridPoint last = mapKey(entries.back().key, m);
  const auto present = anchors(idx.scene());
  for (const auto& [row, reps] : repsPerRow) {
    if (row == std::make_pair(last.z, last.y)) continue;
    if (!present.count(GridPoint{m.xMax(), row.second, row.first})) ++v.rowWithoutEnd;
  }
  for (const auto& [z, rows] : rowsPerPlane) {
    if (z == last.z || !idx.scene().multiPlane()) continue;
    // Either the row end at y_max or an inserted plane end closes the plane.
    if (!present.count(GridPoint{m.xMax(), m.yMax(), z})) ++v.planeWithoutEnd;
  }
  for (PrimitiveIndex i = 0; i < idx.scene().size(); ++i) {
    const auto& t = idx.scene()[i];
    if (!t || !t->flipped) continue;
    const auto it = repsPerRow.find({t->anchor.z, t->anchor.y});
    if (it == repsPerRow.end() || it->second.size() != 1 || t->anchor.x != m.xMax()) {
      ++v.flippedNotSole;
    }
  }
  return v;
}

/// Chain invariants of every bucket: sorted keys across nodes, node sizes
/// within capacity, maxKey fences covering their keys, the last node ending
/// at the bucket fence, and keys inside [fence_{b-1}, fence_b].
inline std::uint64_t chainViolations(const CgrxuIndex& idx) {
  std::uint64_t bad = 0;
  for (BucketId b = 0; b < idx.numBuckets(); ++b) {
    const auto nodes = idx.chain(b);
    const Key lo = b == 0 ? 0 : idx.fence(b - 1);
    const Key hi = idx.fence(b);
    std::optional<Key> prev;
    for (const auto& node : nodes) {
      if (node.entries.size() > idx.nodeCapacity()) ++bad;
      for (const Entry& e : node.entries) {
        if (prev && e.key < *prev) ++bad;
        if (e.key > node.maxKey || e.key < lo || e.key > hi) ++bad;
        prev = e.key;
      }
    }
    if (nodes.empty() || nodes.back().maxKey != hi) ++bad;
  }
  return bad;
}

/// Chains as (maxKey, entries) sequences, ignoring where nodes were allocated.
inline std::vector<std::vector<std::pair<Key, std::vector<Entry>>>> chainShape(
    const CgrxuIndex& idx) {
  std::vector<std::vector<std::pair<Key, std::vector<Entry>>>> out(idx.numBuckets());
  for (BucketId b = 0; b < idx.numBuckets(); ++b) {
    for (const auto& node : idx.chain(b)) out[b].emplace_back(node.maxKey, node.entries);
  }
  return out;
}

inline std::int64_t along(const GridPoint& p, int axis) {
  return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

/// Scene of random distinct anchors inside a cube of side `span` at `base`,
/// clamped to the mapping's range, placed at random slots.
inline SceneBuffer randomScene(Rng& rng, const KeyMapping& m, const GridPoint& base, std::size_t n,
                               std::int64_t span) {
  SceneBuffer s(n * 2, n, Layout::Naive, true, true);
  std::set<GridPoint> used;
  for (std::size_t i = 0; i < n; ++i) {
    GridPoint p{base.x + static_cast<std::int64_t>(rng.below(span)),
                base.y + static_cast<std::int64_t>(rng.below(span)),
                base.z + static_cast<std::int64_t>(rng.below(span))};
    p.x = std::min(p.x, m.xMax());
    p.y = std::min(p.y, m.yMax());
    p.z = std::min(p.z, m.zMax());
    if (!used.insert(p).second) continue;
    s.place(rng.below(s.size()), Triangle{p, rng.below(2) == 1, TriangleRole::Representative});
  }
  return s;
}

/// Closest hit by testing every present triangle in its own local frame.
inline std::optional<Hit> linearScan(const SceneBuffer& s, const KeyMapping& m,
                                     const AxisRay& ray) {
  const int a = static_cast<int>(ray.axis);
  const double scale[3] = {1.0, static_cast<double>(m.yScale), static_cast<double>(m.zScale)};
  Vec3 dir{0, 0, 0};
  dir[a] = 1.0;
  std::optional<Hit> best;
  for (PrimitiveIndex i = 0; i < s.size(); ++i) {
    if (!s[i]) continue;
    const GridPoint& t = s[i]->anchor;
    Vec3 local{};
    for (int k = 0; k < 3; ++k) {
      local[k] = static_cast<double>(along(ray.start, k) - along(t, k)) * scale[k];
    }
    local[a] -= 0.5 * scale[a];
    const auto th = intersectTriangle(local, dir, triangleOffsets(s[i]->flipped));
    if (!th || th->t <= 0.0) continue;
    if (ray.tMax && th->t > *ray.tMax) continue;
    if (best && best->t <= th->t) continue;
    Hit h;
    h.primitiveIndex = i;
    h.cell = t;
    h.t = th->t;
    h.frontFace = th->frontFace;
    best = h;
  }
  return best;
}

} // namespace cgrx::testing
