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

#include "cgrx/cgrx_index.hpp"
#include "cgrx/keymap.hpp"
#include "cgrx/raycast.hpp"
#include "cgrx/representation.hpp"
#include "cgrx/scene.hpp"
#include "cgrx/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cgrx {

inline constexpr std::uint32_t kNoNode = std::numeric_limits<std::uint32_t>::max();
inline constexpr Key kOverflowFence = std::numeric_limits<Key>::max();

/// Structure-of-arrays node storage. Node i owns key/rowID slots
/// [i*N, (i+1)*N).
class NodeRegion {
 public:
  NodeRegion() = default;
  explicit NodeRegion(std::uint32_t capacity) : capacity_(capacity) {}

  std::uint32_t capacity() const { return capacity_; }
  std::uint32_t nodes() const { return static_cast<std::uint32_t>(maxKey_.size()); }
  void resize(std::uint32_t nodes);

  Key* keys(std::uint32_t i) { return keys_.data() + std::size_t{i} * capacity_; }
  const Key* keys(std::uint32_t i) const { return keys_.data() + std::size_t{i} * capacity_; }
  RowId* rows(std::uint32_t i) { return rows_.data() + std::size_t{i} * capacity_; }
  const RowId* rows(std::uint32_t i) const { return rows_.data() + std::size_t{i} * capacity_; }
  Key& maxKey(std::uint32_t i) { return maxKey_[i]; }
  Key maxKey(std::uint32_t i) const { return maxKey_[i]; }
  /// Index into the linked region, or kNoNode.
  std::uint32_t& next(std::uint32_t i) { return next_[i]; }
  std::uint32_t next(std::uint32_t i) const { return next_[i]; }
  std::uint32_t& size(std::uint32_t i) { return size_[i]; }
  std::uint32_t size(std::uint32_t i) const { return size_[i]; }

 private:
  std::uint32_t capacity_ = 0;
  std::vector<Key> keys_;
  std::vector<RowId> rows_;
  std::vector<Key> maxKey_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> size_;
};

/// Node address inside the two regions.
struct NodeRef {
  bool linked = false;
  std::uint32_t index = 0;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
};

struct CgrxuConfig {
  std::uint32_t nodeCapacity = 4;
  KeyMapping mapping = KeyMapping::defaultScaled();
  Backend backend = Backend::Bvh;
};

/// Bytes of one node: N key/rowID pairs plus fence, link and size words.
inline std::uint64_t nodeFootprint(std::uint32_t capacity) { return 16ull * capacity + 24; }

struct UpdateStats {
  std::uint64_t nodesTouched = 0;
  std::uint64_t splits = 0;
  std::uint64_t allocations = 0;
  std::uint64_t insertedPairs = 0;
  std::uint64_t deletedPairs = 0;
  /// Delete keys that matched nothing.
  std::uint64_t absentDeletes = 0;
  /// Keys dropped because they were both inserted and deleted.
  std::uint64_t eliminatedKeys = 0;
  std::uint64_t buildCount = 0;

  UpdateStats& operator+=(const UpdateStats& o);
};

struct ApplyOptions {
  unsigned threads = 1;
  /// Processing order of buckets; must be a permutation of all bucket IDs.
  /// Defaults to ascending.
  const std::vector<BucketId>* bucketOrder = nullptr;
};

/// One node of a chain as seen by a reader.
struct ChainNodeView {
  NodeRef ref;
  Key maxKey = 0;
  std::vector<Entry> entries;
};

/// Updatable index: one chain of fixed-capacity nodes per bucket. The scene
/// over the bulk-load fences is built once and never changes.
class CgrxuIndex {
 public:
  CgrxuIndex() = default;

  /// `pairs` must be non-empty and sorted by key. Throws
  /// Error(UnsortedInput), Error(InvalidNodeCapacity) for odd or < 2
  /// capacities and Error(EmptyKeySet).
  static CgrxuIndex bulkLoad(std::span<const Entry> pairs, const CgrxuConfig& config);

  std::vector<RowId> lookup(Key key, LocateTrace* trace = nullptr,
                            CastStats* stats = nullptr) const;
  std::vector<RowId> rangeLookup(Key l, Key u, LocateTrace* trace = nullptr,
                                 CastStats* stats = nullptr) const;
  std::vector<LookupResult> lookupBatch(std::span<const Key> keys, BatchStats* stats = nullptr,
                                        unsigned threads = 1) const;

  /// Deletes every pair whose key is in `deletes`, then inserts `inserts`.
  /// Keys present in both sets are dropped from the batch first.
  UpdateStats applyBatch(std::span<const Entry> inserts, std::span<const Key> deletes,
                         const ApplyOptions& options = {});

  /// Bulk-load buckets plus the trailing overflow bucket.
  std::uint64_t numBuckets() const { return fences_.size(); }
  BucketId overflowBucket() const { return fences_.size() - 1; }
  Key fence(BucketId b) const { return fences_[b]; }
  std::vector<ChainNodeView> chain(BucketId b) const;
  /// All pairs in chain order.
  std::vector<Entry> contents() const;
  std::uint64_t size() const;

  std::uint32_t nodeCapacity() const { return config_.nodeCapacity; }
  const CgrxuConfig& config() const { return config_; }
  std::uint32_t linkedNodesUsed() const { return linkedUsed_; }
  std::uint32_t linkedCapacity() const { return linked_.nodes(); }
  std::uint64_t buildCount() const { return buildCount_; }
  /// Bytes of both node regions, including unused linked-region slack.
  std::uint64_t nodeBytes() const;

  const SceneBuffer& scene() const { return *scene_; }
  const RayCaster& caster() const { return *caster_; }

  void save(std::ostream& out) const;
  static CgrxuIndex load(std::istream& in);

 private:
  struct Cursor {
    BucketId bucket;
    NodeRef node;
    std::uint32_t pos;
  };

  BucketId bucketFor(Key key, LocateTrace* trace, CastStats* stats) const;
  NodeRegion& region(NodeRef r) { return r.linked ? linked_ : reps_; }
  const NodeRegion& region(NodeRef r) const { return r.linked ? linked_ : reps_; }
  std::optional<NodeRef> nextOf(NodeRef r) const;
  /// First node of bucket b with maxKey >= key, positioned at the first
  /// entry >= key.
  Cursor seek(BucketId b, Key key) const;
  template <class Fn>
  void scanFrom(Cursor c, Fn&& fn) const;

  /// `deleteHit` parallels `deletes`; an entry is set once its key removed
  /// at least one pair.
  void applyBucket(BucketId b, std::span<const Entry> inserts, std::span<const Key> deletes,
                   std::uint8_t* deleteHit, UpdateStats& stats);
  std::uint32_t allocateLinked();
  void attachCaster();

  CgrxuConfig config_;
  std::vector<Key> fences_;
  NodeRegion reps_;
  NodeRegion linked_;
  std::uint32_t linkedUsed_ = 0;
  std::uint64_t buildCount_ = 0;
  std::unique_ptr<SceneBuffer> scene_;
  std::unique_ptr<RayCaster> caster_;
  BucketLocator locator_;
};

} // namespace cgrx
