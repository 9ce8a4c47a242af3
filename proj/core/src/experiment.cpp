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

#include "cgrx/experiment.hpp"

#include "cgrx/baselines.hpp"
#include "cgrx/cgrxu_index.hpp"
#include "json_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace cgrx {

using nlohmann::json;

const char* toString(IndexKind kind) {
  switch (kind) {
    case IndexKind::SortedArray:
      return "sa";
    case IndexKind::Hash:
      return "ht";
    case IndexKind::Rx:
      return "rx";
    case IndexKind::Cgrx:
      return "cgrx";
    case IndexKind::Cgrxu:
      return "cgrxu";
  }
  return "?";
}

IndexKind indexKindFromName(std::string_view name) {
  for (IndexKind k : {IndexKind::SortedArray, IndexKind::Hash, IndexKind::Rx, IndexKind::Cgrx,
                      IndexKind::Cgrxu}) {
    if (name == toString(k)) return k;
  }
  throw Error(ErrorCode::UnsupportedConfig, "unknown index '" + std::string(name) + "'");
}

namespace {

void rejectUnknown(const json& j, std::initializer_list<const char*> known, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(known.begin(), known.end(), [&](const char* k) { return key == k; }) ==
        known.end()) {
      throw Error(ErrorCode::UnsupportedConfig,
                  std::string("unknown field '") + key + "' in " + where);
    }
  }
}

ExperimentConfig configFromJson(const json& j) {
  rejectUnknown(j,
                {"name", "index", "keyset", "duplicates", "variant", "bucketSize", "nodeCapacity",
                 "mapping", "backend", "query", "scale", "updateWaves", "growth", "threads"},
                "run");
  ExperimentConfig c;
  c.name = j.value("name", c.name);
  c.index = indexKindFromName(j.value("index", std::string(toString(c.index))));
  if (j.contains("keyset")) {
    const json& k = j.at("keyset");
    rejectUnknown(k, {"count", "width", "uniformity", "seed"}, "keyset");
    c.keyset.count = k.value("count", c.keyset.count);
    c.keyset.width = k.value("width", c.keyset.width);
    c.keyset.uniformity = k.value("uniformity", c.keyset.uniformity);
    c.keyset.seed = k.value("seed", c.keyset.seed);
  }
  c.duplicates = j.value("duplicates", c.duplicates);
  c.variant = variantFromName(j.value("variant", std::string(toString(c.variant))));
  c.bucketSize = j.value("bucketSize", c.bucketSize);
  c.nodeCapacity = j.value("nodeCapacity", c.nodeCapacity);
  if (j.contains("mapping")) c.mapping = mappingFromJson(j.at("mapping"));
  c.backend = backendFromName(j.value("backend", std::string(toString(c.backend))));
  if (j.contains("query")) {
    const json& q = j.at("query");
    rejectUnknown(q, {"kind", "batchSize", "hitRatio", "missKind", "zipf", "rangeHits", "seed"},
                  "query");
    c.query.kind = queryKindFromName(q.value("kind", std::string(toString(c.query.kind))));
    c.query.batchSize = q.value("batchSize", c.query.batchSize);
    c.query.hitRatio = q.value("hitRatio", c.query.hitRatio);
    c.query.missKind =
        missKindFromName(q.value("missKind", std::string(toString(c.query.missKind))));
    c.query.zipf = q.value("zipf", c.query.zipf);
    c.query.rangeHits = q.value("rangeHits", c.query.rangeHits);
    c.query.seed = q.value("seed", c.query.seed);
  }
  c.scale = std::max<std::uint64_t>(1, j.value("scale", c.scale));
  c.updateWaves = j.value("updateWaves", c.updateWaves);
  c.growth = j.value("growth", c.growth);
  c.threads = j.value("threads", c.threads);
  return c;
}

json parseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Format, std::string("invalid JSON: ") + e.what());
  }
}

LookupResult summarize(const std::vector<RowId>& rows) {
  return {rows.size(), std::accumulate(rows.begin(), rows.end(), RowId{0})};
}

using Clock = std::chrono::steady_clock;

double secondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Checker {
 public:
  explicit Checker(RunMetrics& m) : m_(m) {}

  void account(const std::vector<LookupResult>& got, const std::vector<LookupResult>& want) {
    for (std::size_t i = 0; i < got.size(); ++i) {
      m_.lookupCount += 1;
      m_.hits += got[i].count > 0;
      m_.resultRows += got[i].count;
      m_.aggregate += got[i].aggregate;
      m_.mismatches += !(got[i] == want[i]);
    }
  }

 private:
  RunMetrics& m_;
};

void absorb(RunMetrics& m, const BatchStats& s) {
  for (std::size_t i = 0; i < m.rayHistogram.size(); ++i) m.rayHistogram[i] += s.rayHistogram[i];
  m.bucketProbes += s.bucketProbes;
}

} // namespace

ExperimentConfig parseExperimentConfig(std::string_view text) {
  return configFromJson(parseJson(text));
}

std::vector<ExperimentConfig> parseExperimentConfigs(std::string_view text) {
  const json j = parseJson(text);
  std::vector<ExperimentConfig> out;
  if (j.contains("runs")) {
    for (const json& run : j.at("runs")) out.push_back(configFromJson(run));
  } else {
    out.push_back(configFromJson(j));
  }
  return out;
}

RunMetrics runExperiment(const ExperimentConfig& configIn) {
  ExperimentConfig c = configIn;
  c.keyset.count = std::max<std::uint64_t>(1, c.keyset.count / c.scale);
  c.query.batchSize /= c.scale;
  c.query.width = c.keyset.width;
  const bool ranges = c.query.kind == QueryKind::Range;
  if (ranges && (c.index == IndexKind::Hash || c.index == IndexKind::Rx)) {
    throw Error(ErrorCode::UnsupportedConfig,
                std::string("range queries are not supported on ") + toString(c.index));
  }
  if (c.updateWaves > 0 && c.index != IndexKind::Cgrxu) {
    throw Error(ErrorCode::UnsupportedConfig, "update waves need the cgrxu index");
  }
  if (c.index == IndexKind::Rx && c.duplicates > 0.0) {
    throw Error(ErrorCode::UnsupportedConfig, "rx indexes only the first pair of a key");
  }

  std::vector<Entry> pairs = genKeyset(c.keyset);
  injectDuplicates(pairs, c.duplicates, c.keyset.seed + 1);
  const SortedArrayIndex oracle(pairs);

  RunMetrics m;
  m.name = c.name;
  m.index = toString(c.index);
  m.keys = pairs.size();
  Checker check(m);

  const std::vector<Key> keys = ranges ? std::vector<Key>{} : genLookups(pairs, c.query);
  const auto rangeBatch = ranges ? genRanges(pairs, c.query) : std::vector<std::pair<Key, Key>>{};
  auto expectedPoints = [&](const SortedArrayIndex& ref, std::span<const Key> batch) {
    std::vector<LookupResult> want(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) want[i] = summarize(ref.point(batch[i]));
    return want;
  };
  auto expectedRanges = [&]() {
    std::vector<LookupResult> want(rangeBatch.size());
    for (std::size_t i = 0; i < rangeBatch.size(); ++i) {
      want[i] = summarize(oracle.range(rangeBatch[i].first, rangeBatch[i].second));
    }
    return want;
  };
  auto runSimple = [&](auto&& one) {
    std::vector<LookupResult> got(ranges ? rangeBatch.size() : keys.size());
    const auto start = Clock::now();
    for (std::size_t i = 0; i < got.size(); ++i) got[i] = one(i);
    m.accumulatedTime += secondsSince(start);
    check.account(got, ranges ? expectedRanges() : expectedPoints(oracle, keys));
  };

  switch (c.index) {
    case IndexKind::SortedArray: {
      m.footprint = computeFootprint(oracle);
      runSimple([&](std::size_t i) {
        return summarize(ranges ? oracle.range(rangeBatch[i].first, rangeBatch[i].second)
                                : oracle.point(keys[i]));
      });
      break;
    }
    case IndexKind::Hash: {
      const HashIndex ht(pairs);
      m.footprint = computeFootprint(ht);
      runSimple([&](std::size_t i) { return summarize(ht.point(keys[i])); });
      break;
    }
    case IndexKind::Rx: {
      const RxEmulated rx = RxEmulated::build(pairs, c.mapping, c.backend);
      m.footprint = computeFootprint(rx);
      runSimple([&](std::size_t i) {
        CastStats cast;
        auto rows = rx.point(keys[i], &cast);
        ++m.rayHistogram[1];
        return summarize(rows);
      });
      m.buildCount = 1;
      break;
    }
    case IndexKind::Cgrx: {
      const CgrxIndex idx =
          CgrxIndex::build(pairs, CgrxConfig{c.variant, c.bucketSize, c.mapping, c.backend});
      m.footprint = computeFootprint(idx);
      BatchStats stats;
      const auto start = Clock::now();
      const auto got = ranges ? idx.rangeBatch(rangeBatch, &stats, c.threads)
                              : idx.lookupBatch(keys, &stats, c.threads);
      m.accumulatedTime += secondsSince(start);
      absorb(m, stats);
      check.account(got, ranges ? expectedRanges() : expectedPoints(oracle, keys));
      m.buildCount = 1;
      break;
    }
    case IndexKind::Cgrxu: {
      std::vector<Entry> sorted(pairs);
      std::sort(sorted.begin(), sorted.end(), EntryLess{});
      CgrxuIndex idx =
          CgrxuIndex::bulkLoad(sorted, CgrxuConfig{c.nodeCapacity, c.mapping, c.backend});

      auto runBatch = [&](std::span<const Key> batch, const SortedArrayIndex& ref) {
        BatchStats stats;
        const auto start = Clock::now();
        const auto got = idx.lookupBatch(batch, &stats, c.threads);
        m.accumulatedTime += secondsSince(start);
        absorb(m, stats);
        check.account(got, expectedPoints(ref, batch));
      };
      auto runRanges = [&]() {
        std::vector<LookupResult> got(rangeBatch.size());
        const auto start = Clock::now();
        for (std::size_t i = 0; i < got.size(); ++i) {
          got[i] = summarize(idx.rangeLookup(rangeBatch[i].first, rangeBatch[i].second));
        }
        m.accumulatedTime += secondsSince(start);
        check.account(got, expectedRanges());
      };
      if (ranges) {
        runRanges();
      } else {
        runBatch(keys, oracle);
      }

      if (c.updateWaves > 0) {
        std::multimap<Key, RowId> reference;
        for (const Entry& e : pairs) reference.emplace(e.key, e.rowId);
        const auto waves =
            genUpdateWaves(pairs, c.updateWaves, c.growth, c.keyset.width, c.keyset.seed + 2);
        for (std::size_t w = 0; w < waves.size(); ++w) {
          const UpdateStats us = idx.applyBatch(waves[w].inserts, waves[w].deletes);
          m.nodesTouched += us.nodesTouched;
          m.splits += us.splits;
          for (Key k : waves[w].deletes) reference.erase(k);
          for (const Entry& e : waves[w].inserts) reference.emplace(e.key, e.rowId);

          std::vector<Entry> current;
          current.reserve(reference.size());
          for (const auto& [k, r] : reference) current.push_back({k, r});
          QuerySpec q = c.query;
          q.seed += w + 1;
          const SortedArrayIndex ref(current);
          runBatch(genLookups(current, q), ref);
        }
      }
      m.footprint = computeFootprint(idx);
      m.buildCount = idx.buildCount();
      break;
    }
  }

  if (m.accumulatedTime > 0.0) {
    m.throughput = static_cast<double>(m.lookupCount) / m.accumulatedTime;
    if (m.footprint.totalBytes > 0) {
      m.throughputPerFootprint = m.throughput / static_cast<double>(m.footprint.totalBytes);
    }
  }
  return m;
}

namespace {

json metricsJson(const RunMetrics& m) {
  const FootprintReport& f = m.footprint;
  return json{
      {"schemaVersion", kCsvSchemaVersion},
      {"name", m.name},
      {"index", m.index},
      {"keys", m.keys},
      {"lookupCount", m.lookupCount},
      {"hits", m.hits},
      {"resultRows", m.resultRows},
      {"aggregate", m.aggregate},
      {"rayHistogram", m.rayHistogram},
      {"bucketProbes", m.bucketProbes},
      {"nodesTouched", m.nodesTouched},
      {"splits", m.splits},
      {"buildCount", m.buildCount},
      {"mismatches", m.mismatches},
      {"footprint",
       {{"structure", f.structure},
        {"keys", f.keys},
        {"triangles", f.triangles},
        {"triangleBytes", f.triangleBytes},
        {"vertexBufferBytes", f.vertexBufferBytes},
        {"entryBytes", f.entryBytes},
        {"nodeBytes", f.nodeBytes},
        {"emulatorBvhBytes", f.emulatorBvhBytes},
        {"payloadKeyBytes", f.payloadKeyBytes},
        {"representationBytes", f.representationBytes},
        {"totalBytes", f.totalBytes},
        {"overheadPercent", f.overheadPercent}}},
      {"machine",
       {{"accumulatedTime", m.accumulatedTime},
        {"throughput", m.throughput},
        {"throughputPerFootprint", m.throughputPerFootprint}}},
  };
}

} // namespace

void writeMetricsCsv(std::ostream& out, std::span<const RunMetrics> runs) {
  out << "schema_version,name,index,keys,lookups,hits,result_rows,aggregate,"
         "rays_0,rays_1,rays_2,rays_3,rays_4,rays_5,bucket_probes,nodes_touched,splits,"
         "build_count,mismatches,triangles,triangle_bytes,vertex_buffer_bytes,entry_bytes,"
         "node_bytes,emulator_bvh_bytes,representation_bytes,total_bytes,overhead_percent,"
         "machine_time_s,machine_throughput,machine_throughput_per_byte\n";
  for (const RunMetrics& m : runs) {
    const FootprintReport& f = m.footprint;
    out << kCsvSchemaVersion << ',' << m.name << ',' << m.index << ',' << m.keys << ','
        << m.lookupCount << ',' << m.hits << ',' << m.resultRows << ',' << m.aggregate;
    for (std::uint64_t r : m.rayHistogram) out << ',' << r;
    out << ',' << m.bucketProbes << ',' << m.nodesTouched << ',' << m.splits << ',' << m.buildCount
        << ',' << m.mismatches << ',' << f.triangles << ',' << f.triangleBytes << ','
        << f.vertexBufferBytes << ',' << f.entryBytes << ',' << f.nodeBytes << ','
        << f.emulatorBvhBytes << ',' << f.representationBytes << ',' << f.totalBytes << ','
        << std::fixed << std::setprecision(3) << f.overheadPercent << ',' << std::setprecision(6)
        << m.accumulatedTime << ',' << std::setprecision(1) << m.throughput << ','
        << std::setprecision(6) << m.throughputPerFootprint << std::defaultfloat << '\n';
  }
}

std::string metricsToJson(std::span<const RunMetrics> runs) {
  json arr = json::array();
  for (const RunMetrics& m : runs) arr.push_back(metricsJson(m));
  return json{{"runs", arr}}.dump(2);
}

std::vector<RunMetrics> metricsFromJson(std::string_view text) {
  const json j = parseJson(text);
  std::vector<RunMetrics> out;
  for (const json& r : j.at("runs")) {
    RunMetrics m;
    m.name = r.at("name").get<std::string>();
    m.index = r.at("index").get<std::string>();
    m.keys = r.at("keys").get<std::uint64_t>();
    m.lookupCount = r.at("lookupCount").get<std::uint64_t>();
    m.hits = r.at("hits").get<std::uint64_t>();
    m.resultRows = r.at("resultRows").get<std::uint64_t>();
    m.aggregate = r.at("aggregate").get<std::uint64_t>();
    m.rayHistogram = r.at("rayHistogram").get<std::array<std::uint64_t, 6>>();
    m.bucketProbes = r.at("bucketProbes").get<std::uint64_t>();
    m.nodesTouched = r.at("nodesTouched").get<std::uint64_t>();
    m.splits = r.at("splits").get<std::uint64_t>();
    m.buildCount = r.at("buildCount").get<std::uint64_t>();
    m.mismatches = r.at("mismatches").get<std::uint64_t>();
    const json& f = r.at("footprint");
    m.footprint.structure = f.at("structure").get<std::string>();
    m.footprint.keys = f.at("keys").get<std::uint64_t>();
    m.footprint.triangles = f.at("triangles").get<std::uint64_t>();
    m.footprint.triangleBytes = f.at("triangleBytes").get<std::uint64_t>();
    m.footprint.vertexBufferBytes = f.at("vertexBufferBytes").get<std::uint64_t>();
    m.footprint.entryBytes = f.at("entryBytes").get<std::uint64_t>();
    m.footprint.nodeBytes = f.at("nodeBytes").get<std::uint64_t>();
    m.footprint.emulatorBvhBytes = f.at("emulatorBvhBytes").get<std::uint64_t>();
    m.footprint.payloadKeyBytes = f.at("payloadKeyBytes").get<std::uint64_t>();
    m.footprint.representationBytes = f.at("representationBytes").get<std::uint64_t>();
    m.footprint.totalBytes = f.at("totalBytes").get<std::uint64_t>();
    m.footprint.overheadPercent = f.at("overheadPercent").get<double>();
    const json& mc = r.at("machine");
    m.accumulatedTime = mc.at("accumulatedTime").get<double>();
    m.throughput = mc.at("throughput").get<double>();
    m.throughputPerFootprint = mc.at("throughputPerFootprint").get<double>();
    out.push_back(std::move(m));
  }
  return out;
}

std::string compareReport(std::span<const RunMetrics> runs) {
  std::ostringstream out;
  out << std::left << std::setw(20) << "name" << std::setw(7) << "index" << std::right
      << std::setw(10) << "lookups" << std::setw(9) << "avgRays" << std::setw(12) << "totalB"
      << std::setw(10) << "ovh%" << std::setw(9) << "mism" << std::setw(14) << "lookups/s"
      << std::setw(10) << "rel" << '\n';
  const double base = runs.empty() ? 0.0 : runs.front().throughput;
  for (const RunMetrics& m : runs) {
    std::uint64_t rays = 0;
    for (std::size_t r = 0; r < m.rayHistogram.size(); ++r) rays += r * m.rayHistogram[r];
    const double avgRays =
        m.lookupCount == 0 ? 0.0 : static_cast<double>(rays) / static_cast<double>(m.lookupCount);
    out << std::left << std::setw(20) << m.name << std::setw(7) << m.index << std::right
        << std::setw(10) << m.lookupCount << std::setw(9) << std::fixed << std::setprecision(2)
        << avgRays << std::setw(12) << m.footprint.totalBytes << std::setw(10)
        << std::setprecision(1) << m.footprint.overheadPercent << std::setw(9) << m.mismatches
        << std::setw(14) << std::setprecision(0) << m.throughput << std::setw(10)
        << std::setprecision(2) << (base > 0.0 ? m.throughput / base : 0.0) << '\n';
  }
  return out.str();
}

} // namespace cgrx
