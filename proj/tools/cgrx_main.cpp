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

// cgrx: build a static index from a pair file and query it.

#include <cgrx/binary_io.hpp>
#include <cgrx/cgrx_index.hpp>
#include <cgrx/footprint.hpp>
#include <cgrx/persist.hpp>
#include <cgrx/scene.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tool_common.hpp"

using namespace cgrx;

int main(int argc, char** argv) {
  CLI::App app{"Coarse-granular ray-tracing index"};
  app.require_subcommand(1);

  std::string input, indexPath, batch, dumpPath;
  std::string variant = "opt", mapping = "default-scaled", backend = "bvh";
  std::uint64_t bucketSize = 32;
  unsigned threads = 1;
  bool aggregate = false;
  std::optional<std::string> backendOverride;

  auto* build = app.add_subcommand("build", "Build an index from a raw (key, rowID) pair file");
  build->add_option("--input", input, "Pair file, 16-byte little-endian records")->required();
  build->add_option("--out", indexPath, "Index file to write")->required();
  build->add_option("--variant", variant, "Representation")
      ->check(CLI::IsMember({"naive", "opt"}))
      ->capture_default_str();
  build->add_option("--bucket-size", bucketSize, "Keys per bucket")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tools::addMappingOption(build, mapping);
  tools::addBackendOption(build, backend);
  build->add_option("--dump-scene", dumpPath, "Write the slot buffer as CSV");

  auto* lookup = app.add_subcommand("lookup", "Point lookups from a raw key file");
  auto* range = app.add_subcommand("range", "Range lookups from a raw (l, u) pair file");
  for (auto* cmd : {lookup, range}) {
    cmd->add_option("--index", indexPath, "Index file")->required();
    cmd->add_option("--batch", batch, "Batch file")->required();
    cmd->add_option("--backend", backendOverride, "Override the stored backend")
        ->check(CLI::IsMember({"grid", "bvh"}));
    cmd->add_option("--threads", threads, "Worker threads")->capture_default_str();
    cmd->add_flag("--aggregate", aggregate, "Add the per-query row-ID sum column");
  }

  CLI11_PARSE(app, argc, argv);

  return tools::guarded([&] {
    if (*build) {
      const auto pairs = readPairFile(input);
      const auto index =
          CgrxIndex::build(pairs, {variantFromName(variant), bucketSize,
                                   KeyMapping::fromName(mapping), backendFromName(backend)});
      saveIndex(indexPath, index);
      if (!dumpPath.empty()) {
        std::ofstream out(dumpPath);
        out << "slot,x,y,z,flipped,role\n";
        writeSceneDump(out, index.scene());
      }
      const auto fp = computeFootprint(index);
      std::cerr << "keys=" << fp.keys << " buckets=" << index.numBuckets()
                << " triangles=" << fp.triangles << " overhead=" << fp.overheadPercent << "%\n";
      return 0;
    }

    std::optional<Backend> be;
    if (backendOverride) be = backendFromName(*backendOverride);
    const auto index = loadIndex(indexPath, be);
    BatchStats stats;
    std::vector<LookupResult> results;
    if (*lookup) {
      results = index.lookupBatch(readKeyFile(batch), &stats, threads);
    } else {
      results = index.rangeBatch(readRangeFile(batch), &stats, threads);
    }
    tools::writeResultsCsv(std::cout, results, aggregate);
    std::cerr << "lookups=" << stats.lookups << " hits=" << stats.hits
              << " rays=" << stats.cast.rays << " nodes_visited=" << stats.cast.nodesVisited
              << " triangles_tested=" << stats.cast.trianglesTested << '\n';
    return 0;
  });
}
