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

// bench: experiment runner, report comparison and ad-hoc queries against
// every index kind.

#include <cgrx/baselines.hpp>
#include <cgrx/binary_io.hpp>
#include <cgrx/cgrx_index.hpp>
#include <cgrx/cgrxu_index.hpp>
#include <cgrx/experiment.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "tool_common.hpp"

using namespace cgrx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct QueryOptions {
  std::string index = "cgrx";
  std::string input;
  std::string batch;
  bool range = false;
  std::string variant = "opt";
  std::uint64_t bucketSize = 32;
  std::uint32_t nodeCapacity = 4;
  std::string mapping = "default-scaled";
  std::string backend = "bvh";
  unsigned threads = 1;
  bool aggregate = false;
};

std::vector<LookupResult> runQueries(const QueryOptions& o) {
  auto pairs = readPairFile(o.input);
  std::sort(pairs.begin(), pairs.end(), EntryLess{});
  const KeyMapping m = KeyMapping::fromName(o.mapping);
  const Backend be = backendFromName(o.backend);
  const IndexKind kind = indexKindFromName(o.index);

  if (o.range) {
    const auto ranges = readRangeFile(o.batch);
    std::vector<LookupResult> out;
    switch (kind) {
      case IndexKind::SortedArray: {
        const SortedArrayIndex sa(pairs);
        for (const auto& [l, u] : ranges) out.push_back(tools::summarize(sa.range(l, u)));
        return out;
      }
      case IndexKind::Cgrx:
        return CgrxIndex::build(pairs, {variantFromName(o.variant), o.bucketSize, m, be})
            .rangeBatch(ranges, nullptr, o.threads);
      case IndexKind::Cgrxu: {
        const auto idx = CgrxuIndex::bulkLoad(pairs, {o.nodeCapacity, m, be});
        for (const auto& [l, u] : ranges) out.push_back(tools::summarize(idx.rangeLookup(l, u)));
        return out;
      }
      default:
        throw Error(ErrorCode::UnsupportedConfig,
                    std::string("range lookups are not supported on ") + toString(kind));
    }
  }

  const auto keys = readKeyFile(o.batch);
  std::vector<LookupResult> out;
  out.reserve(keys.size());
  switch (kind) {
    case IndexKind::SortedArray: {
      const SortedArrayIndex sa(pairs);
      for (Key k : keys) out.push_back(tools::summarize(sa.point(k)));
      return out;
    }
    case IndexKind::Hash: {
      const HashIndex ht(pairs);
      for (Key k : keys) out.push_back(tools::summarize(ht.point(k)));
      return out;
    }
    case IndexKind::Rx: {
      const auto rx = RxEmulated::build(pairs, m, be);
      for (Key k : keys) out.push_back(tools::summarize(rx.point(k)));
      return out;
    }
    case IndexKind::Cgrx:
      return CgrxIndex::build(pairs, {variantFromName(o.variant), o.bucketSize, m, be})
          .lookupBatch(keys, nullptr, o.threads);
    case IndexKind::Cgrxu:
      return CgrxuIndex::bulkLoad(pairs, {o.nodeCapacity, m, be})
          .lookupBatch(keys, nullptr, o.threads);
  }
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Index experiments and reports"};
  app.require_subcommand(1);

  std::string config, outDir;
  std::vector<std::string> reports;
  QueryOptions q;

  auto* run = app.add_subcommand("run", "Run the experiments of a JSON config");
  run->add_option("--config", config, "Run object or {\"runs\": [...]}")->required();
  run->add_option("--out", outDir, "Directory for metrics.csv and metrics.json")->required();

  auto* compare = app.add_subcommand("compare", "Tabulate metrics.json files side by side");
  compare->add_option("reports", reports, "metrics.json files")->required();

  auto* query = app.add_subcommand("query", "Build an index and answer a batch file");
  query->add_option("--index", q.index, "Index kind")
      ->check(CLI::IsMember({"sa", "ht", "rx", "cgrx", "cgrxu"}))
      ->capture_default_str();
  query->add_option("--input", q.input, "Pair file")->required();
  query->add_option("--batch", q.batch, "Key file, or range file with --range")->required();
  query->add_flag("--range", q.range, "Treat the batch as (l, u) ranges");
  query->add_option("--variant", q.variant, "cgrx representation")
      ->check(CLI::IsMember({"naive", "opt"}))
      ->capture_default_str();
  query->add_option("--bucket-size", q.bucketSize, "cgrx bucket size")->capture_default_str();
  query->add_option("--node-capacity", q.nodeCapacity, "cgrxu node capacity")
      ->capture_default_str();
  tools::addMappingOption(query, q.mapping);
  tools::addBackendOption(query, q.backend);
  query->add_option("--threads", q.threads, "Worker threads")->capture_default_str();
  query->add_flag("--aggregate", q.aggregate, "Add the per-query row-ID sum column");

  CLI11_PARSE(app, argc, argv);

  return tools::guarded([&] {
    if (*run) {
      const auto configs = parseExperimentConfigs(slurp(config));
      std::vector<RunMetrics> metrics;
      std::uint64_t mismatches = 0;
      for (const auto& c : configs) {
        std::cerr << "running " << c.name << " (" << toString(c.index) << ")\n";
        metrics.push_back(runExperiment(c));
        mismatches += metrics.back().mismatches;
      }
      fs::create_directories(outDir);
      std::ofstream csv(fs::path(outDir) / "metrics.csv");
      writeMetricsCsv(csv, metrics);
      std::ofstream(fs::path(outDir) / "metrics.json") << metricsToJson(metrics) << '\n';
      std::cout << compareReport(metrics);
      if (mismatches) {
        std::cerr << mismatches << " answers differ from the sorted-array oracle\n";
        return 1;
      }
      return 0;
    }
    if (*compare) {
      std::vector<RunMetrics> all;
      for (const auto& r : reports) {
        const auto runs = metricsFromJson(slurp(r));
        all.insert(all.end(), runs.begin(), runs.end());
      }
      std::cout << compareReport(all);
      return 0;
    }
    tools::writeResultsCsv(std::cout, runQueries(q), q.aggregate);
    return 0;
  });
}
