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

#include "cgrx/baselines.hpp"

#include <algorithm>
#include <unordered_set>

namespace cgrx {

namespace {

struct KeyOnly {
  bool operator()(const Entry& e, Key k) const { return e.key < k; }
  bool operator()(Key k, const Entry& e) const { return k < e.key; }
};

} // namespace

SortedArrayIndex::SortedArrayIndex(std::vector<Entry> pairs) : entries_(std::move(pairs)) {
  std::sort(entries_.begin(), entries_.end(), EntryLess{});
}

std::vector<RowId> SortedArrayIndex::point(Key key) const {
  std::vector<RowId> rows;
  const auto [lo, hi] = std::equal_range(entries_.begin(), entries_.end(), key, KeyOnly{});
  for (auto it = lo; it != hi; ++it) rows.push_back(it->rowId);
  return rows;
}

std::vector<RowId> SortedArrayIndex::range(Key l, Key u) const {
  std::vector<RowId> rows;
  if (l > u) return rows;
  for (auto it = std::lower_bound(entries_.begin(), entries_.end(), l, KeyOnly{});
       it != entries_.end() && it->key <= u; ++it) {
    rows.push_back(it->rowId);
  }
  return rows;
}

HashIndex::HashIndex(std::span<const Entry> pairs) : size_(pairs.size()) {
  map_.reserve(pairs.size());
  for (const Entry& e : pairs) map_[e.key].push_back(e.rowId);
}

std::vector<RowId> HashIndex::point(Key key) const {
  const auto it = map_.find(key);
  return it == map_.end() ? std::vector<RowId>{} : it->second;
}

std::uint64_t HashIndex::memoryBytes() const {
  constexpr std::uint64_t node = sizeof(void*) + sizeof(Key) + sizeof(std::vector<RowId>);
  return map_.bucket_count() * sizeof(void*) + map_.size() * node + size_ * sizeof(RowId);
}

RxEmulated RxEmulated::build(std::span<const Entry> pairs, const KeyMapping& m, Backend backend) {
  m.validate();
  RowId maxRow = 0;
  for (const Entry& e : pairs) maxRow = std::max(maxRow, e.rowId);
  if (maxRow >= (RowId{1} << 31)) {
    throw Error(ErrorCode::UnsupportedConfig, "RX emulation needs row IDs below 2^31");
  }

  RxEmulated rx;
  rx.mapping_ = m;
  rx.scene_ =
      std::make_unique<SceneBuffer>(pairs.empty() ? 0 : maxRow + 1, 0, Layout::Naive, false, false);
  std::unordered_set<Key> seen;
  seen.reserve(pairs.size());
  for (const Entry& e : pairs) {
    if (!seen.insert(e.key).second || (*rx.scene_)[e.rowId]) {
      ++rx.skipped_;
      continue;
    }
    rx.scene_->place(e.rowId, Triangle{mapKey(e.key, m), false, TriangleRole::Representative});
  }
  rx.keys_ = seen.size();
  rx.caster_ = makeCaster(backend, *rx.scene_, m);
  return rx;
}

std::vector<RowId> RxEmulated::point(Key key, CastStats* stats) const {
  const auto hit = caster_->cast(AxisRay{Axis::X, mapKey(key, mapping_), 1.0}, stats);
  if (!hit) return {};
  return {hit->primitiveIndex};
}

} // namespace cgrx
