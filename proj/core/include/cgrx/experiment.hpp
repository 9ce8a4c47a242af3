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
#include "cgrx/footprint.hpp"
#include "cgrx/keymap.hpp"
#include "cgrx/raycast.hpp"
#include "cgrx/representation.hpp"
#include "cgrx/workload.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cgrx {

enum class IndexKind : std::uint8_t { SortedArray, Hash, Rx, Cgrx, Cgrxu };

const char* toString(IndexKind kind);
IndexKind indexKindFromName(std::string_view name);

struct ExperimentConfig {
  std::string name = "run";
  IndexKind index = IndexKind::Cgrx;
  KeysetSpec keyset;
  /// Fraction of keys overwritten with duplicates of other keys.
  double duplicates = 0.0;
  Variant variant = Variant::Optimized;
  std::uint64_t bucketSize = 32;
  std::uint32_t nodeCapacity = 4;
  KeyMapping mapping = KeyMapping::defaultScaled();
  Backend backend = Backend::Bvh;
  QuerySpec query;
  /// Divides keyset.count and query.batchSize.
  std::uint64_t scale = 1;
  /// cgRXu only: replay insert/delete waves with a lookup batch after each.
  unsigned updateWaves = 0;
  double growth = 2.2;
  unsigned threads = 1;
};

/// Parses one run object. Throws Error(UnsupportedConfig) on unknown values.
ExperimentConfig parseExperimentConfig(std::string_view json);
/// Accepts a single run object or {"runs": [...]}.
std::vector<ExperimentConfig> parseExperimentConfigs(std::string_view json);

struct RunMetrics {
  std::string name;
  std::string index;
  std::uint64_t keys = 0;
  std::uint64_t lookupCount = 0;
  std::uint64_t hits = 0;
  std::uint64_t resultRows = 0;
  /// Sum of all per-lookup row-ID aggregates.
  std::uint64_t aggregate = 0;
  std::array<std::uint64_t, 6> rayHistogram{};
  std::uint64_t bucketProbes = 0;
  std::uint64_t nodesTouched = 0;
  std::uint64_t splits = 0;
  std::uint64_t buildCount = 0;
  /// Queries whose count or aggregate differs from the sorted-array answer.
  std::uint64_t mismatches = 0;
  FootprintReport footprint;
  /// Machine-dependent columns.
  double accumulatedTime = 0.0;
  double throughput = 0.0;
  double throughputPerFootprint = 0.0;
};

/// Builds the configured index, runs the query batches and checks every
/// answer against a sorted array. Range queries on ht or rx throw
/// Error(UnsupportedConfig).
RunMetrics runExperiment(const ExperimentConfig& config);

inline constexpr int kCsvSchemaVersion = 1;

void writeMetricsCsv(std::ostream& out, std::span<const RunMetrics> runs);
std::string metricsToJson(std::span<const RunMetrics> runs);
std::vector<RunMetrics> metricsFromJson(std::string_view json);

/// Plain-text table of the deterministic columns plus throughput ratios
/// relative to the first run.
std::string compareReport(std::span<const RunMetrics> runs);

} // namespace cgrx
