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

#include "cgrx/types.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cgrx {

/// mt19937_64 with a bounded draw and shuffle defined here rather than by
/// the standard library, so generated files match across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1p-53; }

  template <class T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

struct KeysetSpec {
  std::uint64_t count = 1u << 20;
  /// 32 or 64.
  unsigned width = 64;
  /// Percentage of keys drawn uniformly; the rest form the run 0..d-1.
  double uniformity = 100.0;
  std::uint64_t seed = 42;
};

/// Size of the dense run: floor((1 - uniformity/100) * count).
std::uint64_t denseCount(const KeysetSpec& spec);

/// Keys in shuffled order with rowID = position. Throws
/// Error(KeySpaceExhausted) when count exceeds the key space and
/// Error(UnsupportedConfig) for bad width or uniformity.
std::vector<Entry> genKeyset(const KeysetSpec& spec);

/// Replaces `fraction` of the pairs' keys with copies of other keys from the
/// set; row IDs are unchanged.
void injectDuplicates(std::vector<Entry>& pairs, double fraction, std::uint64_t seed);

enum class QueryKind : std::uint8_t { Point, Range, MixedMiss };
enum class MissKind : std::uint8_t { InRange, OutOfRange };

const char* toString(QueryKind kind);
QueryKind queryKindFromName(const std::string& name);
const char* toString(MissKind kind);
MissKind missKindFromName(const std::string& name);

struct QuerySpec {
  QueryKind kind = QueryKind::Point;
  std::uint64_t batchSize = 1u << 21;
  /// Fraction of queries that hit. For MixedMiss the misses split evenly
  /// between in-range and out-of-range keys.
  double hitRatio = 1.0;
  MissKind missKind = MissKind::InRange;
  /// Zipf exponent over the key ranks; 0 draws uniformly.
  double zipf = 0.0;
  /// Expected hits per range query.
  std::uint64_t rangeHits = 16;
  unsigned width = 64;
  std::uint64_t seed = 7;
};

/// Point lookup keys. Hits are drawn from `keyset` (ranked by position);
/// misses are absent keys inside [min, max] or above max. When no such key
/// exists the other miss kind is used.
std::vector<Key> genLookups(std::span<const Entry> keyset, const QuerySpec& spec);

/// [l, u] pairs. Hit ranges start at a random stored key and span
/// `rangeHits` stored keys; miss ranges lie above the largest key.
std::vector<std::pair<Key, Key>> genRanges(std::span<const Entry> keyset, const QuerySpec& spec);

struct UpdateWave {
  std::vector<Entry> inserts;
  std::vector<Key> deletes;
};

/// `waves` insertion waves adding (growth - 1) * n fresh keys in equal
/// parts, then `waves` deletion waves removing them in reverse order.
/// Fresh row IDs continue after the largest existing one.
std::vector<UpdateWave> genUpdateWaves(std::span<const Entry> keyset, unsigned waves, double growth,
                                       unsigned width, std::uint64_t seed);

/// JSON object describing a keyset spec (written next to generated files).
std::string keysetSpecJson(const KeysetSpec& spec);

} // namespace cgrx
