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

#include <cgrx/cgrxu_index.hpp>

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "cgrx_testing.hpp"

namespace cgrx {
namespace {

using testing::chainShape;
using testing::chainViolations;
using testing::sortedRows;

std::vector<Entry> sortedPairs(std::vector<Entry> pairs) {
  std::sort(pairs.begin(), pairs.end(), EntryLess{});
  return pairs;
}

CgrxuConfig smallConfig(std::uint32_t n = 4) { return {n, KeyMapping::simple(), Backend::Bvh}; }

std::vector<RowId> multimapRows(const std::multimap<Key, RowId>& ref, Key k) {
  std::vector<RowId> rows;
  for (auto [it, end] = ref.equal_range(k); it != end; ++it) rows.push_back(it->second);
  std::sort(rows.begin(), rows.end());
  return rows;
}

TEST(CgrxuIndex, BulkLoadFillsHalfNodes) {
  std::vector<Entry> pairs;
  for (Key k = 0; k < 8; ++k) pairs.push_back({k * 10, k});
  const auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  EXPECT_EQ(idx.numBuckets(), 5u);
  EXPECT_EQ(idx.overflowBucket(), 4u);
  EXPECT_EQ(idx.fence(4), kOverflowFence);
  for (BucketId b = 0; b < 4; ++b) {
    ASSERT_EQ(idx.chain(b).size(), 1u);
    EXPECT_EQ(idx.chain(b)[0].entries.size(), 2u);
    EXPECT_EQ(idx.fence(b), pairs[2 * b + 1].key);
  }
  EXPECT_TRUE(idx.chain(4)[0].entries.empty());
  EXPECT_EQ(idx.linkedNodesUsed(), 0u);
  EXPECT_EQ(idx.linkedCapacity(), 0u);
  EXPECT_EQ(idx.buildCount(), 1u);
  EXPECT_EQ(idx.contents(), pairs);
}

TEST(CgrxuIndex, SkewedKeysStillGiveEqualCounts) {
  std::vector<Entry> pairs;
  for (Key k = 0; k < 50; ++k) pairs.push_back({k, k});
  for (Key k = 0; k < 50; ++k) pairs.push_back({(Key{1} << 60) + (k << 40), 50 + k});
  const auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig(8));
  for (BucketId b = 0; b + 1 < idx.numBuckets(); ++b) {
    EXPECT_EQ(idx.chain(b)[0].entries.size(), 4u);
  }
}

TEST(CgrxuIndex, SplitMovesUpperHalfIntoLinkedNode) {
  const std::vector<Entry> pairs{{2, 2}, {5, 5}, {10, 10}, {16, 16}, {20, 20}, {30, 30}};
  auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  const std::vector<Entry> fill{{12, 12}, {14, 14}};
  auto stats = idx.applyBatch(fill, {});
  EXPECT_EQ(stats.splits, 0u);
  EXPECT_EQ(idx.chain(1)[0].entries.size(), 4u);

  const std::vector<Entry> one{{13, 13}};
  stats = idx.applyBatch(one, {});
  EXPECT_EQ(stats.splits, 1u);
  EXPECT_EQ(stats.allocations, 1u);
  const auto chain = idx.chain(1);
  ASSERT_EQ(chain.size(), 2u);
  EXPECT_FALSE(chain[0].ref.linked);
  EXPECT_TRUE(chain[1].ref.linked);
  EXPECT_EQ(chain[0].maxKey, 12u);
  EXPECT_EQ(chain[1].maxKey, 16u);
  EXPECT_EQ(chain[0].entries, (std::vector<Entry>{{10, 10}, {12, 12}}));
  EXPECT_EQ(chain[1].entries, (std::vector<Entry>{{13, 13}, {14, 14}, {16, 16}}));
  EXPECT_EQ(idx.lookup(13), std::vector<RowId>{13});
  EXPECT_EQ(idx.lookup(16), std::vector<RowId>{16});
  EXPECT_TRUE(idx.lookup(15).empty());
  EXPECT_EQ(idx.buildCount(), 1u);
  EXPECT_EQ(chainViolations(idx), 0u);
}

TEST(CgrxuIndex, KeysAboveTheLoadGoToOverflow) {
  const std::vector<Entry> pairs{{2, 2}, {5, 5}, {10, 10}, {16, 16}};
  auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  const std::vector<Entry> big{{100, 1}, {1000, 2}, {~Key{0}, 3}, {90, 4}, {95, 5}};
  idx.applyBatch(big, {});
  EXPECT_EQ(idx.lookup(1000), std::vector<RowId>{2});
  EXPECT_EQ(idx.lookup(~Key{0}), std::vector<RowId>{3});
  EXPECT_GE(idx.chain(idx.overflowBucket()).size(), 2u);
  EXPECT_EQ(sortedRows(idx.rangeLookup(50, 1000)), (std::vector<RowId>{1, 2, 4, 5}));
}

TEST(CgrxuIndex, DeleteRemovesEveryDuplicate) {
  const std::vector<Entry> pairs{{1, 0}, {4, 1}, {4, 2}, {4, 3}, {4, 4}, {9, 5}};
  auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  EXPECT_EQ(sortedRows(idx.lookup(4)), (std::vector<RowId>{1, 2, 3, 4}));
  const std::vector<Key> del{4, 7};
  const auto stats = idx.applyBatch({}, del);
  EXPECT_EQ(stats.deletedPairs, 4u);
  EXPECT_EQ(stats.absentDeletes, 1u);
  EXPECT_TRUE(idx.lookup(4).empty());
  EXPECT_EQ(idx.size(), 2u);
}

TEST(CgrxuIndex, EliminatesKeysInBothSets) {
  const std::vector<Entry> pairs{{1, 0}, {4, 1}, {6, 2}, {9, 3}};
  auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  const auto before = chainShape(idx);
  const std::vector<Entry> ins{{5, 7}};
  const std::vector<Key> del{5};
  const auto stats = idx.applyBatch(ins, del);
  EXPECT_EQ(stats.eliminatedKeys, 1u);
  EXPECT_EQ(stats.insertedPairs, 0u);
  EXPECT_EQ(stats.nodesTouched, 0u);
  EXPECT_EQ(chainShape(idx), before);
}

TEST(CgrxuIndex, RejectsBadInput) {
  const std::vector<Entry> pairs{{1, 0}, {4, 1}};
  EXPECT_THROW(CgrxuIndex::bulkLoad(pairs, smallConfig(3)), Error);
  EXPECT_THROW(CgrxuIndex::bulkLoad(pairs, smallConfig(0)), Error);
  EXPECT_THROW(CgrxuIndex::bulkLoad({}, smallConfig()), Error);
  const std::vector<Entry> unsorted{{4, 0}, {1, 1}};
  try {
    CgrxuIndex::bulkLoad(unsorted, smallConfig());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsortedInput);
  }
}

TEST(CgrxuIndex, MatchesStaticIndexBeforeUpdates) {
  Rng rng(41);
  const auto pairs = sortedPairs(testing::clusteredPairs(rng, 3000, 64, 0.1));
  const auto u = CgrxuIndex::bulkLoad(pairs, {4, KeyMapping::defaultScaled(), Backend::Bvh});
  const auto s = CgrxIndex::buildOptimized(pairs, 2, KeyMapping::defaultScaled());
  for (int i = 0; i < 3000; ++i) {
    const Key k = pairs[rng.below(pairs.size())].key + rng.below(3);
    EXPECT_EQ(sortedRows(u.lookup(k)), sortedRows(s.pointLookup(k)));
  }
}

class CgrxuWaves : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(CgrxuWaves, ReplayMatchesMultimap) {
  const std::uint32_t cap = GetParam();
  Rng rng(50 + cap);
  for (const auto& m : {KeyMapping::simple(), KeyMapping::defaultScaled()}) {
    const auto pairs = sortedPairs(testing::clusteredPairs(rng, 2000, 64, 0.05));
    auto idx = CgrxuIndex::bulkLoad(pairs, {cap, m, Backend::Grid});
    std::multimap<Key, RowId> ref;
    for (const Entry& e : pairs) ref.emplace(e.key, e.rowId);

    for (const auto& wave : genUpdateWaves(pairs, 4, 2.2, 64, rng.next())) {
      idx.applyBatch(wave.inserts, wave.deletes, {2, nullptr});
      for (Key k : wave.deletes) ref.erase(k);
      for (const Entry& e : wave.inserts) ref.emplace(e.key, e.rowId);
      ASSERT_EQ(chainViolations(idx), 0u);
      ASSERT_EQ(idx.size(), ref.size());
      for (int i = 0; i < 500; ++i) {
        auto it = ref.begin();
        std::advance(it, rng.below(ref.size()));
        const Key k = it->first + rng.below(2);
        ASSERT_EQ(sortedRows(idx.lookup(k)), multimapRows(ref, k)) << "key " << k;
      }
      Key l = rng.next(), u = rng.next();
      if (l > u) std::swap(l, u);
      std::vector<RowId> want;
      for (auto it = ref.lower_bound(l); it != ref.end() && it->first <= u; ++it) {
        want.push_back(it->second);
      }
      EXPECT_EQ(sortedRows(idx.rangeLookup(l, u)), sortedRows(want));
    }
    EXPECT_EQ(idx.contents(), pairs);
    EXPECT_EQ(idx.buildCount(), 1u);
  }
}

INSTANTIATE_TEST_SUITE_P(Capacities, CgrxuWaves, ::testing::Values(2u, 4u, 8u));

TEST(CgrxuIndex, BucketOrderDoesNotChangeTheState) {
  Rng rng(61);
  const auto pairs = sortedPairs(testing::clusteredPairs(rng, 1500, 64, 0.05));
  const auto wave = genUpdateWaves(pairs, 1, 2.0, 64, 5).front();
  auto base = CgrxuIndex::bulkLoad(pairs, smallConfig());
  base.applyBatch(wave.inserts, wave.deletes);
  const auto want = chainShape(base);

  std::vector<BucketId> order(base.numBuckets());
  std::iota(order.begin(), order.end(), BucketId{0});
  for (int trial = 0; trial < 10; ++trial) {
    rng.shuffle(std::span<BucketId>(order));
    auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
    idx.applyBatch(wave.inserts, wave.deletes, {1 + static_cast<unsigned>(trial % 3), &order});
    EXPECT_EQ(chainShape(idx), want);
  }
  const std::vector<BucketId> shortOrder{0};
  auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  EXPECT_THROW(idx.applyBatch(wave.inserts, {}, {1, &shortOrder}), Error);
}

TEST(CgrxuIndex, LinkedRegionGrowsByDoubling) {
  std::vector<Entry> pairs{{0, 0}, {1u << 20, 1}};
  auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  std::vector<Entry> ins;
  for (Key k = 1; k <= 100; ++k) ins.push_back({k, k});
  idx.applyBatch(ins, {});
  EXPECT_GE(idx.linkedCapacity(), idx.linkedNodesUsed());
  EXPECT_EQ(idx.linkedCapacity() & (idx.linkedCapacity() - 1), 0u);
  EXPECT_EQ(idx.nodeBytes(),
            (std::uint64_t{idx.numBuckets()} + idx.linkedCapacity()) * nodeFootprint(4));
  EXPECT_EQ(nodeFootprint(4), 88u);
  for (Key k = 1; k <= 100; ++k) EXPECT_EQ(idx.lookup(k), std::vector<RowId>{k});
}

TEST(CgrxuIndex, SaveAndLoadKeepTheScene) {
  Rng rng(71);
  const auto pairs = sortedPairs(testing::clusteredPairs(rng, 500, 64, 0.0));
  auto idx = CgrxuIndex::bulkLoad(pairs, smallConfig());
  const auto wave = genUpdateWaves(pairs, 1, 1.5, 64, 9).front();
  idx.applyBatch(wave.inserts, {});
  std::stringstream buf;
  idx.save(buf);
  const auto loaded = CgrxuIndex::load(buf);
  EXPECT_EQ(loaded.buildCount(), 1u);
  EXPECT_EQ(chainShape(loaded), chainShape(idx));
  EXPECT_EQ(testing::anchors(loaded.scene()), testing::anchors(idx.scene()));
  for (const Entry& e : wave.inserts) {
    EXPECT_EQ(sortedRows(loaded.lookup(e.key)), sortedRows(idx.lookup(e.key)));
  }
}

} // namespace
} // namespace cgrx
