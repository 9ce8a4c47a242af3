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

#include <cgrx/types.hpp>
#include <cgrx/workload.hpp>

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

namespace cgrx::bench {

inline constexpr std::uint64_t kKeys = 1u << 20;
inline constexpr std::uint64_t kBatch = 1u << 16;

/// Cached key sets so repeated benchmark arguments share generation cost.
inline const std::vector<Entry>& keyset(std::uint64_t n, double uniformity, unsigned width = 64) {
  static std::map<std::tuple<std::uint64_t, double, unsigned>, std::vector<Entry>> cache;
  auto& pairs = cache[{n, uniformity, width}];
  if (pairs.empty()) pairs = genKeyset({n, width, uniformity, 42});
  return pairs;
}

inline std::vector<Entry> sortedKeyset(std::uint64_t n, double uniformity) {
  auto pairs = keyset(n, uniformity);
  std::sort(pairs.begin(), pairs.end(), EntryLess{});
  return pairs;
}

inline std::vector<Key> hits(const std::vector<Entry>& pairs) {
  QuerySpec q;
  q.batchSize = kBatch;
  return genLookups(pairs, q);
}

} // namespace cgrx::bench
