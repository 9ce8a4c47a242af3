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

#include "cgrx/cgrx_index.hpp"

#include "cgrx/parallel.hpp"

#include <algorithm>

namespace cgrx {

void BatchStats::record(const LocateTrace& trace) {
  ++lookups;
  ++rayHistogram[std::min<std::size_t>(trace.rays, rayHistogram.size() - 1)];
  flipShortcuts += trace.flipShortcut;
  flipMismatches += trace.flipMismatch;
}

BatchStats& BatchStats::operator+=(const BatchStats& o) {
  lookups += o.lookups;
  hits += o.hits;
  resultRows += o.resultRows;
  for (std::size_t i = 0; i < rayHistogram.size(); ++i) rayHistogram[i] += o.rayHistogram[i];
  bucketProbes += o.bucketProbes;
  flipShortcuts += o.flipShortcuts;
  flipMismatches += o.flipMismatches;
  cast += o.cast;
  return *this;
}

CgrxIndex CgrxIndex::build(std::vector<Entry> pairs, const CgrxConfig& config) {
  config.mapping.validate();
  if (pairs.empty()) throw Error(ErrorCode::EmptyKeySet, "key set is empty");

  CgrxIndex idx;
  idx.config_ = config;
  idx.store_ = BucketStore(std::move(pairs), config.bucketSize);

  std::vector<Key> keys(idx.store_.size());
  std::transform(idx.store_.entries().begin(), idx.store_.entries().end(), keys.begin(),
                 [](const Entry& e) { return e.key; });

  idx.scene_ = std::make_unique<SceneBuffer>(
      config.variant == Variant::Naive
          ? buildNaiveScene(keys, config.bucketSize, config.mapping)
          : buildOptimizedScene(keys, config.bucketSize, config.mapping));
  idx.caster_ = makeCaster(config.backend, *idx.scene_, config.mapping);
  const auto [minRep, maxRep] = representativeRange(keys, config.bucketSize);
  idx.locator_ = BucketLocator(*idx.scene_, *idx.caster_, config.mapping, minRep, maxRep);
  return idx;
}

CgrxIndex CgrxIndex::buildNaive(std::vector<Entry> pairs, std::uint64_t bucketSize,
                                const KeyMapping& m, Backend backend) {
  return build(std::move(pairs), CgrxConfig{Variant::Naive, bucketSize, m, backend});
}

CgrxIndex CgrxIndex::buildOptimized(std::vector<Entry> pairs, std::uint64_t bucketSize,
                                    const KeyMapping& m, Backend backend) {
  return build(std::move(pairs), CgrxConfig{Variant::Optimized, bucketSize, m, backend});
}

std::optional<BucketId> CgrxIndex::locateBucket(Key key, LocateTrace* trace, CastStats* stats,
                                                bool verifyFlips) const {
  return locator_.locate(key, trace, stats, verifyFlips);
}

std::vector<RowId> CgrxIndex::pointLookup(Key key, LocateTrace* trace, CastStats* stats,
                                          bool verifyFlips) const {
  const auto bucket = locateBucket(key, trace, stats, verifyFlips);
  if (!bucket) return {};
  return store_.searchBucket(*bucket, key);
}

std::vector<RowId> CgrxIndex::rangeLookup(Key l, Key u, LocateTrace* trace,
                                          CastStats* stats) const {
  if (l > u) return {};
  const auto bucket = locateBucket(l, trace, stats);
  if (!bucket) return {};
  return store_.scanRange(*bucket, l, u);
}

namespace {

template <class Query, class Run>
std::vector<LookupResult> runBatch(std::span<const Query> queries, BatchStats* stats,
                                   unsigned threads, Run&& run) {
  std::vector<LookupResult> results(queries.size());
  if (threads == 0) threads = defaultThreads();
  std::vector<BatchStats> perWorker(threads);
  parallelFor(queries.size(), threads, [&](std::size_t begin, std::size_t end, unsigned w) {
    BatchStats& local = perWorker[w];
    for (std::size_t i = begin; i < end; ++i) {
      LocateTrace trace;
      std::optional<std::vector<RowId>> rows = run(queries[i], trace, local.cast);
      local.record(trace);
      if (!rows) continue;
      ++local.bucketProbes;
      results[i] = {rows->size(), BucketStore::aggregate(*rows)};
      local.hits += !rows->empty();
      local.resultRows += rows->size();
    }
  });
  if (stats) {
    for (const auto& s : perWorker) *stats += s;
  }
  return results;
}

} // namespace

std::vector<LookupResult> CgrxIndex::lookupBatch(std::span<const Key> keys, BatchStats* stats,
                                                 unsigned threads, bool verifyFlips) const {
  return runBatch(
      keys, stats, threads,
      [&](Key key, LocateTrace& trace, CastStats& cast) -> std::optional<std::vector<RowId>> {
        const auto bucket = locator_.locate(key, &trace, &cast, verifyFlips);
        if (!bucket) return std::nullopt;
        return store_.searchBucket(*bucket, key);
      });
}

std::vector<LookupResult> CgrxIndex::rangeBatch(std::span<const std::pair<Key, Key>> ranges,
                                                BatchStats* stats, unsigned threads) const {
  return runBatch(ranges, stats, threads,
                  [&](const std::pair<Key, Key>& r, LocateTrace& trace,
                      CastStats& cast) -> std::optional<std::vector<RowId>> {
                    if (r.first > r.second) return std::vector<RowId>{};
                    const auto bucket = locator_.locate(r.first, &trace, &cast);
                    if (!bucket) return std::nullopt;
                    return store_.scanRange(*bucket, r.first, r.second);
                  });
}

} // namespace cgrx
