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

// cgrxu: updatable index kept in a state file between invocations.

#include <cgrx/binary_io.hpp>
#include <cgrx/cgrxu_index.hpp>
#include <cgrx/persist.hpp>

#include <algorithm>
#include <iostream>
#include <string>

#include <json.hpp>

#include "tool_common.hpp"

using namespace cgrx;

int main(int argc, char** argv) {
  CLI::App app{"Updatable coarse-granular ray-tracing index"};
  app.require_subcommand(1);

  std::string input, state, inserts, deletes, batch;
  std::string mapping = "default-scaled", backend = "bvh";
  std::uint32_t nodeCapacity = 4;
  unsigned threads = 1;
  bool aggregate = false;

  auto* load = app.add_subcommand("load", "Bulk-load a raw (key, rowID) pair file");
  load->add_option("--input", input, "Pair file")->required();
  load->add_option("--node-capacity", nodeCapacity, "Pairs per node")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  tools::addMappingOption(load, mapping);
  tools::addBackendOption(load, backend);

  auto* update = app.add_subcommand("update", "Apply one insert/delete batch");
  update->add_option("--inserts", inserts, "Pair file of inserts");
  update->add_option("--deletes", deletes, "Key file of deletes");
  update->add_option("--threads", threads, "Worker threads")->capture_default_str();

  auto* lookup = app.add_subcommand("lookup", "Point lookups from a raw key file");
  lookup->add_option("--batch", batch, "Key file")->required();
  lookup->add_option("--threads", threads, "Worker threads")->capture_default_str();
  lookup->add_flag("--aggregate", aggregate, "Add the per-query row-ID sum column");

  for (auto* cmd : {load, update, lookup}) {
    cmd->add_option("--state", state, "State file")->required();
  }

  CLI11_PARSE(app, argc, argv);

  return tools::guarded([&] {
    if (*load) {
      auto pairs = readPairFile(input);
      std::sort(pairs.begin(), pairs.end(), EntryLess{});
      const auto index = CgrxuIndex::bulkLoad(
          pairs, {nodeCapacity, KeyMapping::fromName(mapping), backendFromName(backend)});
      saveState(state, index);
      std::cerr << "keys=" << index.size() << " buckets=" << index.numBuckets() << '\n';
      return 0;
    }

    auto index = loadState(state);
    if (*update) {
      std::vector<Entry> ins;
      std::vector<Key> del;
      if (!inserts.empty()) ins = readPairFile(inserts);
      if (!deletes.empty()) del = readKeyFile(deletes);
      const auto s = index.applyBatch(ins, del, {threads, nullptr});
      saveState(state, index);
      const nlohmann::json out = {
          {"nodesTouched", s.nodesTouched},   {"splits", s.splits},
          {"allocations", s.allocations},     {"buildCount", s.buildCount},
          {"insertedPairs", s.insertedPairs}, {"deletedPairs", s.deletedPairs},
          {"absentDeletes", s.absentDeletes}, {"eliminatedKeys", s.eliminatedKeys},
      };
      std::cout << out.dump() << '\n';
      return 0;
    }

    BatchStats stats;
    const auto results = index.lookupBatch(readKeyFile(batch), &stats, threads);
    tools::writeResultsCsv(std::cout, results, aggregate);
    std::cerr << "lookups=" << stats.lookups << " hits=" << stats.hits
              << " rays=" << stats.cast.rays << '\n';
    return 0;
  });
}
