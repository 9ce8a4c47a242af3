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

#include "cgrx/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cgrx {

/// Globally sorted key-rowID array, logically cut into buckets of
/// `bucketSize` entries. Bucket b covers [b*B, min((b+1)*B, size)).
class BucketStore {
 public:
  /// Entries scanned together by one cooperative group during range scans.
  static constexpr std::size_t kScanGroup = 16;

  BucketStore() = default;
  /// Sorts `entries` by key (rowID breaks ties).
  BucketStore(std::vector<Entry> entries, std::uint64_t bucketSize);

  std::uint64_t bucketSize() const { return bucketSize_; }
  std::uint64_t numBuckets() const { return numBuckets_; }
  std::uint64_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::span<const Entry> entries() const { return entries_; }
  std::span<const Entry> bucket(BucketId b) const;
  /// Last key of bucket b.
  Key representative(BucketId b) const;

  /// Row IDs of `key`, starting the binary search in bucket b and following
  /// duplicates across later buckets. Empty when the key is absent.
  std::vector<RowId> searchBucket(BucketId b, Key key) const;

  /// Row IDs of all entries with key in [l, u], scanning forward from the
  /// first entry >= l in `startBucket`.
  std::vector<RowId> scanRange(BucketId startBucket, Key l, Key u) const;

  /// Sum of the row IDs a lookup would return (the per-lookup aggregate).
  static RowId aggregate(std::span<const RowId> rows);

 private:
  std::vector<Entry> entries_;
  std::uint64_t bucketSize_ = 1;
  std::uint64_t numBuckets_ = 0;
};

} // namespace cgrx
