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

// workload: deterministic key sets, query batches and update waves as raw
// little-endian files, each with a JSON description next to it.

#include <cgrx/binary_io.hpp>
#include <cgrx/workload.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "tool_common.hpp"

using namespace cgrx;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kFullScaleKeys = 1ull << 26;
constexpr std::uint64_t kFullScaleLookups = 1ull << 27;

void writeSidecar(const fs::path& data, const nlohmann::json& spec) {
  std::ofstream(data.string() + ".json") << spec.dump(2) << '\n';
}

nlohmann::json querySpecJson(const QuerySpec& q) {
  return {{"kind", toString(q.kind)}, {"batchSize", q.batchSize},
          {"hitRatio", q.hitRatio},   {"missKind", toString(q.missKind)},
          {"zipf", q.zipf},           {"rangeHits", q.rangeHits},
          {"width", q.width},         {"seed", q.seed}};
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workload generator"};
  app.require_subcommand(1);

  KeysetSpec ks;
  QuerySpec qs;
  std::string out, keysetPath, kind = "point", missKind = "in-range";
  double duplicates = 0.0, growth = 2.2;
  unsigned waves = 8;
  std::uint64_t scale = 1;
  bool fullScale = false;

  auto* keyset = app.add_subcommand("keyset", "Shuffled (key, rowID) pairs");
  keyset->add_option("--count", ks.count, "Number of keys")->capture_default_str();
  keyset->add_option("--width", ks.width, "Key width in bits")
      ->check(CLI::IsMember({32, 64}))
      ->capture_default_str();
  keyset->add_option("--uniformity", ks.uniformity, "Percentage of uniformly drawn keys")
      ->check(CLI::Range(0.0, 100.0))
      ->capture_default_str();
  keyset->add_option("--seed", ks.seed, "RNG seed")->capture_default_str();
  keyset->add_option("--duplicates", duplicates, "Fraction of keys replaced by duplicates")
      ->check(CLI::Range(0.0, 1.0));

  auto* lookups = app.add_subcommand("lookups", "Point lookup keys");
  auto* ranges = app.add_subcommand("ranges", "(l, u) range queries");
  for (auto* cmd : {lookups, ranges}) {
    cmd->add_option("--keyset", keysetPath, "Pair file to draw from")->required();
    cmd->add_option("--batch-size", qs.batchSize, "Queries")->capture_default_str();
    cmd->add_option("--hit-ratio", qs.hitRatio, "Fraction of hits")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--miss-kind", missKind, "Where misses lie")
        ->check(CLI::IsMember({"in-range", "out-of-range"}))
        ->capture_default_str();
    cmd->add_option("--width", qs.width, "Key width in bits")
        ->check(CLI::IsMember({32, 64}))
        ->capture_default_str();
    cmd->add_option("--seed", qs.seed, "RNG seed")->capture_default_str();
  }
  lookups->add_option("--kind", kind, "Query mix")
      ->check(CLI::IsMember({"point", "mixed-miss"}))
      ->capture_default_str();
  lookups->add_option("--zipf", qs.zipf, "Zipf exponent over key ranks")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ranges->add_option("--range-hits", qs.rangeHits, "Expected hits per range")
      ->capture_default_str();

  auto* wavesCmd = app.add_subcommand("waves", "Insert waves followed by matching delete waves");
  wavesCmd->add_option("--keyset", keysetPath, "Initial pair file")->required();
  wavesCmd->add_option("--waves", waves, "Insert waves")->capture_default_str();
  wavesCmd->add_option("--growth", growth, "Peak size relative to the initial set")
      ->check(CLI::Range(1.0, 100.0))
      ->capture_default_str();
  wavesCmd->add_option("--width", ks.width, "Key width in bits")
      ->check(CLI::IsMember({32, 64}))
      ->capture_default_str();
  wavesCmd->add_option("--seed", ks.seed, "RNG seed")->capture_default_str();

  for (auto* cmd : {keyset, lookups, ranges, wavesCmd}) {
    cmd->add_option("--out", out, "Output file, or directory for waves")->required();
  }
  for (auto* cmd : {keyset, lookups}) {
    cmd->add_option("--scale", scale, "Divide the count or batch size")->check(CLI::PositiveNumber);
    cmd->add_flag("--full-scale", fullScale, "Use 2^26 keys and 2^27 lookups");
  }

  CLI11_PARSE(app, argc, argv);

  return tools::guarded([&] {
    if (*keyset) {
      if (fullScale) ks.count = kFullScaleKeys;
      ks.count = std::max<std::uint64_t>(ks.count / scale, 1);
      auto pairs = genKeyset(ks);
      if (duplicates > 0.0) injectDuplicates(pairs, duplicates, ks.seed + 1);
      writePairFile(out, pairs);
      auto spec = nlohmann::json::parse(keysetSpecJson(ks));
      spec["duplicates"] = duplicates;
      writeSidecar(out, spec);
      return 0;
    }

    const auto pairs = readPairFile(keysetPath);
    if (*wavesCmd) {
      const auto seq = genUpdateWaves(pairs, waves, growth, ks.width, ks.seed);
      fs::create_directories(out);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        const fs::path dir(out);
        writePairFile(dir / ("inserts_" + std::to_string(i) + ".bin"), seq[i].inserts);
        writeKeyFile(dir / ("deletes_" + std::to_string(i) + ".bin"), seq[i].deletes);
      }
      std::ofstream(fs::path(out) / "waves.json")
          << nlohmann::json{{"keyset", keysetPath}, {"waves", waves},  {"growth", growth},
                            {"width", ks.width},    {"seed", ks.seed}, {"files", seq.size()}}
                 .dump(2)
          << '\n';
      return 0;
    }

    qs.missKind = missKindFromName(missKind);
    if (*lookups) {
      qs.kind = queryKindFromName(kind);
      if (fullScale) qs.batchSize = kFullScaleLookups;
      qs.batchSize = std::max<std::uint64_t>(qs.batchSize / scale, 1);
      writeKeyFile(out, genLookups(pairs, qs));
    } else {
      qs.kind = QueryKind::Range;
      writeRangeFile(out, genRanges(pairs, qs));
    }
    auto spec = querySpecJson(qs);
    spec["keyset"] = keysetPath;
    writeSidecar(out, spec);
    return 0;
  });
}
