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

#include <cgrx/footprint.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "cgrx_testing.hpp"

namespace cgrx {
namespace {

double round3(double v) {
  const double mag = std::pow(10.0, 2 - std::floor(std::log10(std::abs(v))));
  return std::round(v * mag) / mag;
}

std::vector<Entry> denseRow(std::uint64_t n) {
  std::vector<Entry> pairs;
  for (Key k = 0; k < n; ++k) pairs.push_back({k, k});
  return pairs;
}

TEST(Footprint, RxPerKeyOverhead) {
  const auto rx = RxEmulated::build(denseRow(4096), KeyMapping::defaultScaled());
  const auto f = computeFootprint(rx);
  EXPECT_EQ(f.triangleBytes, 36u * 4096);
  EXPECT_EQ(round3(f.overheadPercent), 77.8);
}

TEST(Footprint, CgrxBucketOverhead) {
  for (Variant v : {Variant::Naive, Variant::Optimized}) {
    const auto b8 = CgrxIndex::build(denseRow(8192), {v, 8, KeyMapping::defaultScaled()});
    const auto f8 = computeFootprint(b8);
    EXPECT_EQ(f8.triangles, 1024u);
    EXPECT_EQ(round3(f8.overheadPercent), 36.0);
    const auto b32 = CgrxIndex::build(denseRow(8192), {v, 32, KeyMapping::defaultScaled()});
    EXPECT_EQ(round3(computeFootprint(b32).overheadPercent), 12.3);
  }
}

TEST(Footprint, OverheadIsNonPayloadShare) {
  Rng rng(91);
  const auto pairs = testing::clusteredPairs(rng, 3000, 64, 0.0);
  const auto idx = CgrxIndex::buildNaive(pairs, 4, KeyMapping::defaultScaled());
  const auto f = computeFootprint(idx);
  EXPECT_EQ(f.payloadKeyBytes, 8u * 3000);
  EXPECT_EQ(f.entryBytes, 16u * 3000);
  EXPECT_EQ(f.triangleBytes, 36u * idx.scene().triangleCount());
  EXPECT_EQ(f.vertexBufferBytes, 36u * idx.scene().size());
  EXPECT_DOUBLE_EQ(f.overheadPercent, 100.0 * f.triangleBytes /
                                          static_cast<double>(f.triangleBytes + f.payloadKeyBytes));
  EXPECT_EQ(f.totalBytes, f.entryBytes + f.vertexBufferBytes);
}

TEST(Footprint, Baselines) {
  const auto pairs = denseRow(100);
  const auto sa = computeFootprint(SortedArrayIndex(pairs));
  EXPECT_EQ(sa.totalBytes, 1600u);
  EXPECT_EQ(sa.overheadPercent, 0.0);
  const auto ht = computeFootprint(HashIndex(pairs));
  EXPECT_GT(ht.totalBytes, 1600u);
  EXPECT_GT(ht.overheadPercent, 0.0);
}

TEST(Footprint, CgrxuCountsNodes) {
  const auto pairs = denseRow(64);
  const auto idx = CgrxuIndex::bulkLoad(pairs, {4, KeyMapping::defaultScaled(), Backend::Bvh});
  const auto f = computeFootprint(idx);
  EXPECT_EQ(f.nodeBytes, 33u * 88u);
  EXPECT_EQ(f.keys, 64u);
  EXPECT_EQ(f.totalBytes, f.nodeBytes + f.vertexBufferBytes);
}

} // namespace
} // namespace cgrx
