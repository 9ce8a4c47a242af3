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

#include <cgrx/cgrx_index.hpp>
#include <cgrx/raycast.hpp>

#include <benchmark/benchmark.h>

#include "bench_data.hpp"

namespace cgrx::bench {
namespace {

// Single x rays from the anchors of looked-up keys. Args: backend (0 grid, 1 bvh).
void BM_XRay(benchmark::State& state) {
  const auto& pairs = keyset(kKeys, 100);
  const auto idx = CgrxIndex::build(pairs, {Variant::Optimized, 32, KeyMapping::defaultScaled(),
                                            state.range(0) ? Backend::Bvh : Backend::Grid});
  std::vector<AxisRay> rays;
  for (Key k : hits(pairs)) rays.push_back({Axis::X, mapKey(k, idx.mapping()), {}});
  CastStats stats;
  for (auto _ : state) {
    for (const auto& r : rays) benchmark::DoNotOptimize(idx.caster().cast(r, &stats));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * rays.size()));
  state.counters["nodes/ray"] = static_cast<double>(stats.nodesVisited) /
                                static_cast<double>(std::max<std::uint64_t>(stats.rays, 1));
}
BENCHMARK(BM_XRay)->ArgName("bvh")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace
} // namespace cgrx::bench
