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

#include "cgrx/bucket_store.hpp"

#include <algorithm>
#include <numeric>

namespace cgrx {

BucketStore::BucketStore(std::vector<Entry> entries, std::uint64_t bucketSize)
    : entries_(std::move(entries)), bucketSize_(bucketSize) {
  if (bucketSize_ == 0) throw Error(ErrorCode::InvalidBucketSize, "bucket size must be >= 1");
  std::sort(entries_.begin(), entries_.end(), EntryLess{});
  numBuckets_ = (entries_.size() + bucketSize_ - 1) / bucketSize_;
}

std::span<const Entry> BucketStore::bucket(BucketId b) const {
  const std::uint64_t begin = b * bucketSize_;
  const std::uint64_t end = std::min<std::uint64_t>(begin + bucketSize_, entries_.size());
  return std::span<const Entry>(entries_).subspan(begin, end - begin);
}

Key BucketStore::representative(BucketId b) const { return bucket(b).back().key; }

std::vector<RowId> BucketStore::searchBucket(BucketId b, Key key) const {
  std::vector<RowId> rows;
  const auto span = bucket(b);
  auto it = std::lower_bound(span.begin(), span.end(), key,
                             [](const Entry& e, Key k) { return e.key < k; });
  // Duplicates may run past the bucket end.
  std::size_t i = b * bucketSize_ + static_cast<std::size_t>(it - span.begin());
  for (; i < entries_.size() && entries_[i].key == key; ++i) rows.push_back(entries_[i].rowId);
  return rows;
}

std::vector<RowId> BucketStore::scanRange(BucketId startBucket, Key l, Key u) const {
  std::vector<RowId> rows;
  if (l > u || startBucket >= numBuckets_) return rows;
  const auto span = bucket(startBucket);
  auto it = std::lower_bound(span.begin(), span.end(), l,
                             [](const Entry& e, Key k) { return e.key < k; });
  std::size_t i = startBucket * bucketSize_ + static_cast<std::size_t>(it - span.begin());
  while (i < entries_.size()) {
    const std::size_t end = std::min(i + kScanGroup, entries_.size());
    for (; i < end; ++i) {
      if (entries_[i].key > u) return rows;
      rows.push_back(entries_[i].rowId);
    }
  }
  return rows;
}

RowId BucketStore::aggregate(std::span<const RowId> rows) {
  return std::accumulate(rows.begin(), rows.end(), RowId{0});
}

} // namespace cgrx
