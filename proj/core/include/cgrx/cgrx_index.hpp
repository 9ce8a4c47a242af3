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

#include "cgrx/bucket_store.hpp"
#include "cgrx/keymap.hpp"
#include "cgrx/raycast.hpp"
#include "cgrx/representation.hpp"
#include "cgrx/scene.hpp"
#include "cgrx/types.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cgrx {

struct CgrxConfig {
  Variant variant = Variant::Optimized;
  std::uint64_t bucketSize = 32;
  KeyMapping mapping = KeyMapping::defaultScaled();
  Backend backend = Backend::Bvh;
};

/// Space-efficient bucket size preset.
inline constexpr std::uint64_t kCompactBucketSize = 256;

/// Count and row-ID sum of one lookup's result.
struct LookupResult {
  std::uint64_t count = 0;
  RowId aggregate = 0;

  friend bool operator==(const LookupResult&, const LookupResult&) = default;
};

struct BatchStats {
  std::uint64_t lookups = 0;
  /// Lookups with a non-empty result.
  std::uint64_t hits = 0;
  std::uint64_t resultRows = 0;
  /// rayHistogram[r] counts lookups that fired r rays.
  std::array<std::uint64_t, 6> rayHistogram{};
  /// Bucket searches started (lookups that reached the bucket store).
  std::uint64_t bucketProbes = 0;
  std::uint64_t flipShortcuts = 0;
  std::uint64_t flipMismatches = 0;
  CastStats cast;

  void record(const LocateTrace& trace);
  BatchStats& operator+=(const BatchStats& o);
};

/// Static coarse-granular index: a bucketed sorted array plus one triangle
/// scene over the bucket representatives.
class CgrxIndex {
 public:
  CgrxIndex() = default;

  /// Throws Error(EmptyKeySet) for empty input and Error(InvalidBucketSize)
  /// for bucketSize 0.
  static CgrxIndex build(std::vector<Entry> pairs, const CgrxConfig& config);
  static CgrxIndex buildNaive(std::vector<Entry> pairs, std::uint64_t bucketSize,
                              const KeyMapping& m, Backend backend = Backend::Bvh);
  static CgrxIndex buildOptimized(std::vector<Entry> pairs, std::uint64_t bucketSize,
                                  const KeyMapping& m, Backend backend = Backend::Bvh);

  std::optional<BucketId> locateBucket(Key key, LocateTrace* trace = nullptr,
                                       CastStats* stats = nullptr, bool verifyFlips = false) const;

  /// Row IDs stored under `key`; empty on a miss.
  std::vector<RowId> pointLookup(Key key, LocateTrace* trace = nullptr, CastStats* stats = nullptr,
                                 bool verifyFlips = false) const;

  /// Row IDs of all keys in [l, u], in key order.
  std::vector<RowId> rangeLookup(Key l, Key u, LocateTrace* trace = nullptr,
                                 CastStats* stats = nullptr) const;

  /// Runs a batch of point lookups on `threads` workers (0 = hardware).
  std::vector<LookupResult> lookupBatch(std::span<const Key> keys, BatchStats* stats = nullptr,
                                        unsigned threads = 1, bool verifyFlips = false) const;
  std::vector<LookupResult> rangeBatch(std::span<const std::pair<Key, Key>> ranges,
                                       BatchStats* stats = nullptr, unsigned threads = 1) const;

  const CgrxConfig& config() const { return config_; }
  const BucketStore& store() const { return store_; }
  const SceneBuffer& scene() const { return *scene_; }
  const RayCaster& caster() const { return *caster_; }
  const KeyMapping& mapping() const { return config_.mapping; }
  Key minRep() const { return locator_.minRep(); }
  Key maxRep() const { return locator_.maxRep(); }
  std::uint64_t numBuckets() const { return store_.numBuckets(); }

 private:
  CgrxConfig config_;
  BucketStore store_;
  std::unique_ptr<SceneBuffer> scene_;
  std::unique_ptr<RayCaster> caster_;
  BucketLocator locator_;
};

} // namespace cgrx
