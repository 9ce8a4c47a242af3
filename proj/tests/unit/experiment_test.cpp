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

#include <cgrx/experiment.hpp>

#include <gtest/gtest.h>

#include <sstream>

namespace cgrx {
namespace {

ExperimentConfig small(IndexKind kind) {
  ExperimentConfig c;
  c.name = toString(kind);
  c.index = kind;
  c.keyset = {4096, 64, 50, 3};
  c.query.batchSize = 2048;
  c.query.hitRatio = 0.75;
  c.bucketSize = 8;
  return c;
}

TEST(ExperimentConfig, ParsesNestedObjects) {
  const auto c = parseExperimentConfig(R"({
    "name": "x", "index": "cgrxu", "keyset": {"count": 1000, "width": 32, "uniformity": 20},
    "mapping": "simple", "backend": "grid", "variant": "naive", "bucketSize": 4,
    "query": {"kind": "range", "batchSize": 10, "rangeHits": 4}, "scale": 2,
    "updateWaves": 3, "threads": 2})");
  EXPECT_EQ(c.name, "x");
  EXPECT_EQ(c.index, IndexKind::Cgrxu);
  EXPECT_EQ(c.keyset.count, 1000u);
  EXPECT_EQ(c.keyset.width, 32u);
  EXPECT_EQ(c.mapping, KeyMapping::simple());
  EXPECT_EQ(c.backend, Backend::Grid);
  EXPECT_EQ(c.variant, Variant::Naive);
  EXPECT_EQ(c.query.kind, QueryKind::Range);
  EXPECT_EQ(c.query.rangeHits, 4u);
  EXPECT_EQ(c.scale, 2u);
  EXPECT_EQ(c.updateWaves, 3u);
}

TEST(ExperimentConfig, RejectsUnknownFields) {
  EXPECT_THROW(parseExperimentConfig(R"({"indx": "sa"})"), Error);
  EXPECT_THROW(parseExperimentConfig(R"({"query": {"batch": 1}})"), Error);
  EXPECT_THROW(parseExperimentConfig(R"({"index": "btree"})"), Error);
  EXPECT_EQ(parseExperimentConfigs(R"({"runs": [{}, {"index": "sa"}]})").size(), 2u);
  EXPECT_EQ(parseExperimentConfigs(R"({"index": "ht"})").size(), 1u);
}

TEST(Experiment, AllIndexesAgreeOnPointLookups) {
  std::vector<RunMetrics> runs;
  for (IndexKind k : {IndexKind::SortedArray, IndexKind::Hash, IndexKind::Rx, IndexKind::Cgrx,
                      IndexKind::Cgrxu}) {
    runs.push_back(runExperiment(small(k)));
    EXPECT_EQ(runs.back().mismatches, 0u) << toString(k);
  }
  for (const auto& r : runs) {
    EXPECT_EQ(r.lookupCount, 2048u);
    EXPECT_EQ(r.hits, runs[0].hits);
    EXPECT_EQ(r.aggregate, runs[0].aggregate);
    EXPECT_GT(r.footprint.totalBytes, 0u);
  }
  EXPECT_EQ(runs[4].buildCount, 1u);
  std::ostringstream csv;
  writeMetricsCsv(csv, runs);
  EXPECT_EQ(csv.str().rfind("schema_version,", 0), 0u);
  EXPECT_NE(csv.str().find("\n1,sa,"), std::string::npos);
  const auto back = metricsFromJson(metricsToJson(runs));
  ASSERT_EQ(back.size(), runs.size());
  EXPECT_EQ(back[3].aggregate, runs[3].aggregate);
  EXPECT_EQ(back[3].rayHistogram, runs[3].rayHistogram);
  EXPECT_NE(compareReport(back).find("cgrx"), std::string::npos);
}

TEST(Experiment, RangesAndScale) {
  auto c = small(IndexKind::Cgrx);
  c.query.kind = QueryKind::Range;
  c.scale = 4;
  const auto m = runExperiment(c);
  EXPECT_EQ(m.keys, 1024u);
  EXPECT_EQ(m.lookupCount, 512u);
  EXPECT_EQ(m.mismatches, 0u);
  auto h = small(IndexKind::Hash);
  h.query.kind = QueryKind::Range;
  EXPECT_THROW(runExperiment(h), Error);
}

TEST(Experiment, UpdateWavesOnCgrxu) {
  auto c = small(IndexKind::Cgrxu);
  c.updateWaves = 2;
  c.query.batchSize = 256;
  const auto m = runExperiment(c);
  EXPECT_EQ(m.mismatches, 0u);
  EXPECT_EQ(m.buildCount, 1u);
  EXPECT_GT(m.splits, 0u);
  auto bad = small(IndexKind::Cgrx);
  bad.updateWaves = 1;
  EXPECT_THROW(runExperiment(bad), Error);
}

TEST(Experiment, EmptyBatch) {
  auto c = small(IndexKind::Cgrx);
  c.query.batchSize = 0;
  const auto m = runExperiment(c);
  EXPECT_EQ(m.lookupCount, 0u);
  EXPECT_EQ(m.mismatches, 0u);
}

} // namespace
} // namespace cgrx
