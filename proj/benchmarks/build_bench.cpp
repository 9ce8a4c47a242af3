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
#include <cgrx/representation.hpp>

#include <benchmark/benchmark.h>

#include "bench_data.hpp"

namespace cgrx::bench {
namespace {

// Args: variant (0 naive, 1 optimized), bucket size.
void BM_BuildScene(benchmark::State& state) {
  const auto pairs = sortedKeyset(kKeys, 100);
  std::vector<Key> keys;
  keys.reserve(pairs.size());
  for (const Entry& e : pairs) keys.push_back(e.key);
  const auto b = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) {
    if (state.range(0)) {
      benchmark::DoNotOptimize(buildOptimizedScene(keys, b, KeyMapping::defaultScaled()));
    } else {
      benchmark::DoNotOptimize(buildNaiveScene(keys, b, KeyMapping::defaultScaled()));
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * keys.size()));
}
BENCHMARK(BM_BuildScene)
    ->ArgNames({"opt", "B"})
    ->ArgsProduct({{0, 1}, {4, 32, 256}})
    ->Unit(benchmark::kMillisecond);

void BM_BuildIndex(benchmark::State& state) {
  const auto& pairs = keyset(kKeys, 100);
  const Backend backend = state.range(0) ? Backend::Bvh : Backend::Grid;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        CgrxIndex::build(pairs, {Variant::Optimized, 32, KeyMapping::defaultScaled(), backend}));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * pairs.size()));
}
BENCHMARK(BM_BuildIndex)->ArgName("bvh")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace
} // namespace cgrx::bench
