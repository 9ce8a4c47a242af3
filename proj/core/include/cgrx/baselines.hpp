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

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

namespace cgrx {

/// Binary search over a sorted pair array.
class SortedArrayIndex {
 public:
  SortedArrayIndex() = default;
  explicit SortedArrayIndex(std::vector<Entry> pairs);

  std::vector<RowId> point(Key key) const;
  std::vector<RowId> range(Key l, Key u) const;

  std::span<const Entry> entries() const { return entries_; }
  std::uint64_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

/// Exact-match hash map; point lookups only.
class HashIndex {
 public:
  HashIndex() = default;
  explicit HashIndex(std::span<const Entry> pairs);

  std::vector<RowId> point(Key key) const;
  std::uint64_t size() const { return size_; }
  /// Estimated heap bytes: bucket array plus one node per distinct key.
  std::uint64_t memoryBytes() const;

 private:
  std::unordered_map<Key, std::vector<RowId>> map_;
  std::uint64_t size_ = 0;
};

/// One isolated triangle per key at slot = rowID; a lookup is a single x ray
/// confined to the key's grid cell.
///
/// Only the first pair of a duplicated key (in input order) is indexed, as
/// two triangles may not share an anchor.
class RxEmulated {
 public:
  RxEmulated() = default;

  /// Row IDs must be below 2^31. Throws Error(UnsupportedConfig) otherwise.
  static RxEmulated build(std::span<const Entry> pairs, const KeyMapping& m,
                          Backend backend = Backend::Bvh);

  std::vector<RowId> point(Key key, CastStats* stats = nullptr) const;

  std::uint64_t triangleCount() const { return scene_->triangleCount(); }
  /// Pairs skipped because their key was already indexed.
  std::uint64_t skippedDuplicates() const { return skipped_; }
  std::uint64_t keys() const { return keys_; }
  const SceneBuffer& scene() const { return *scene_; }
  const RayCaster& caster() const { return *caster_; }
  const KeyMapping& mapping() const { return mapping_; }

 private:
  KeyMapping mapping_;
  std::unique_ptr<SceneBuffer> scene_;
  std::unique_ptr<RayCaster> caster_;
  std::uint64_t skipped_ = 0;
  std::uint64_t keys_ = 0;
};

} // namespace cgrx
