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

#include "cgrx/workload.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_set>

namespace cgrx {

__extension__ using U128 = unsigned __int128;

std::uint64_t Rng::below(std::uint64_t bound) {
  // Lemire's multiply-shift with rejection of the biased low range.
  U128 m = static_cast<U128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<U128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

namespace {

constexpr Key kMax64 = std::numeric_limits<Key>::max();

Key widthMax(unsigned width) {
  if (width == 64) return kMax64;
  if (width == 32) return 0xffffffffull;
  throw Error(ErrorCode::UnsupportedConfig, "key width must be 32 or 64");
}

/// Uniform key in [lo, hi].
Key drawBetween(Rng& rng, Key lo, Key hi) {
  if (lo == 0 && hi == kMax64) return rng.next();
  return lo + rng.below(hi - lo + 1);
}

class MissSampler {
 public:
  MissSampler(std::span<const Entry> keyset, unsigned width) : limit_(widthMax(width)) {
    sorted_.reserve(keyset.size());
    for (const Entry& e : keyset) sorted_.push_back(e.key);
    std::sort(sorted_.begin(), sorted_.end());
    sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
  }

  const std::vector<Key>& sorted() const { return sorted_; }

  bool contains(Key k) const { return std::binary_search(sorted_.begin(), sorted_.end(), k); }

  std::optional<Key> inRange(Rng& rng) const {
    if (sorted_.size() < 2) return std::nullopt;
    const Key lo = sorted_.front();
    const Key hi = sorted_.back();
    if (hi - lo + 1 == sorted_.size()) return std::nullopt;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      const Key k = drawBetween(rng, lo, hi);
      if (!contains(k)) return k;
    }
    // Dense sets: take the first gap after a random stored key.
    const std::size_t i = rng.below(sorted_.size() - 1);
    for (std::size_t j = i; j + 1 < sorted_.size(); ++j) {
      if (sorted_[j + 1] != sorted_[j] + 1) return sorted_[j] + 1;
    }
    for (std::size_t j = 0; j + 1 < sorted_.size(); ++j) {
      if (sorted_[j + 1] != sorted_[j] + 1) return sorted_[j] + 1;
    }
    return std::nullopt;
  }

  std::optional<Key> outOfRange(Rng& rng) const {
    if (sorted_.empty()) return drawBetween(rng, 0, limit_);
    if (sorted_.back() >= limit_) return std::nullopt;
    return drawBetween(rng, sorted_.back() + 1, limit_);
  }

  std::optional<Key> belowMin(Rng& rng) const {
    if (sorted_.empty() || sorted_.front() == 0) return std::nullopt;
    return drawBetween(rng, 0, sorted_.front() - 1);
  }

  /// Absent key of the requested kind, falling back to the other kinds.
  std::optional<Key> miss(Rng& rng, MissKind kind) const {
    std::optional<Key> k = kind == MissKind::InRange ? inRange(rng) : outOfRange(rng);
    if (!k) k = kind == MissKind::InRange ? outOfRange(rng) : inRange(rng);
    if (!k) k = belowMin(rng);
    return k;
  }

 private:
  Key limit_;
  std::vector<Key> sorted_;
};

/// Draws ranks 0..n-1 with probability proportional to 1 / (rank + 1)^s.
class RankSampler {
 public:
  RankSampler(std::size_t n, double s) : n_(n) {
    if (s <= 0.0 || n == 0) return;
    cdf_.resize(n);
    double total = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      total += std::pow(static_cast<double>(r + 1), -s);
      cdf_[r] = total;
    }
    for (double& c : cdf_) c /= total;
  }

  std::size_t draw(Rng& rng) const {
    if (cdf_.empty()) return rng.below(n_);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), rng.unit());
    return std::min<std::size_t>(it - cdf_.begin(), n_ - 1);
  }

 private:
  std::size_t n_;
  std::vector<double> cdf_;
};

std::uint64_t hitCount(const QuerySpec& spec) {
  const double ratio = std::clamp(spec.hitRatio, 0.0, 1.0);
  return static_cast<std::uint64_t>(std::llround(ratio * static_cast<double>(spec.batchSize)));
}

} // namespace

std::uint64_t denseCount(const KeysetSpec& spec) {
  if (spec.uniformity < 0.0 || spec.uniformity > 100.0) {
    throw Error(ErrorCode::UnsupportedConfig, "uniformity must lie in [0, 100]");
  }
  const long double d = (100.0L - spec.uniformity) * spec.count / 100.0L;
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(std::floor(d)), spec.count);
}

std::vector<Entry> genKeyset(const KeysetSpec& spec) {
  const Key limit = widthMax(spec.width);
  const std::uint64_t d = denseCount(spec);
  if (spec.width == 32 && spec.count > limit + 1ull) {
    throw Error(ErrorCode::KeySpaceExhausted, "more keys requested than the key space holds");
  }

  Rng rng(spec.seed);
  std::vector<Entry> pairs;
  pairs.reserve(spec.count);
  for (Key k = 0; k < d; ++k) pairs.push_back({k, 0});

  std::unordered_set<Key> drawn;
  drawn.reserve(spec.count - d);
  while (pairs.size() < spec.count) {
    const Key k = drawBetween(rng, d, limit);
    if (drawn.insert(k).second) pairs.push_back({k, 0});
  }

  rng.shuffle(std::span<Entry>(pairs));
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].rowId = i;
  return pairs;
}

void injectDuplicates(std::vector<Entry>& pairs, double fraction, std::uint64_t seed) {
  if (pairs.size() < 2 || fraction <= 0.0) return;
  Rng rng(seed);
  const auto m = static_cast<std::uint64_t>(std::min(1.0, fraction) * pairs.size());
  for (std::uint64_t i = 0; i < m; ++i) {
    const std::size_t dst = rng.below(pairs.size());
    const std::size_t src = rng.below(pairs.size());
    pairs[dst].key = pairs[src].key;
  }
}

const char* toString(QueryKind kind) {
  switch (kind) {
    case QueryKind::Point:
      return "point";
    case QueryKind::Range:
      return "range";
    case QueryKind::MixedMiss:
      return "mixed-miss";
  }
  return "?";
}

QueryKind queryKindFromName(const std::string& name) {
  if (name == "point") return QueryKind::Point;
  if (name == "range") return QueryKind::Range;
  if (name == "mixed-miss") return QueryKind::MixedMiss;
  throw Error(ErrorCode::UnsupportedConfig, "unknown query kind '" + name + "'");
}

const char* toString(MissKind kind) {
  return kind == MissKind::InRange ? "in-range" : "out-of-range";
}

MissKind missKindFromName(const std::string& name) {
  if (name == "in-range") return MissKind::InRange;
  if (name == "out-of-range") return MissKind::OutOfRange;
  throw Error(ErrorCode::UnsupportedConfig, "unknown miss kind '" + name + "'");
}

std::vector<Key> genLookups(std::span<const Entry> keyset, const QuerySpec& spec) {
  Rng rng(spec.seed);
  const MissSampler misses(keyset, spec.width);
  const RankSampler ranks(keyset.size(), spec.zipf);
  const std::uint64_t hits = keyset.empty() ? 0 : hitCount(spec);

  std::vector<Key> out;
  out.reserve(spec.batchSize);
  for (std::uint64_t i = 0; i < hits; ++i) out.push_back(keyset[ranks.draw(rng)].key);

  const std::uint64_t missTotal = spec.batchSize - hits;
  for (std::uint64_t i = 0; i < missTotal; ++i) {
    MissKind kind = spec.missKind;
    if (spec.kind == QueryKind::MixedMiss)
      kind = i % 2 == 0 ? MissKind::InRange : MissKind::OutOfRange;
    const auto k = misses.miss(rng, kind);
    out.push_back(k ? *k : keyset[ranks.draw(rng)].key);
  }
  rng.shuffle(std::span<Key>(out));
  return out;
}

std::vector<std::pair<Key, Key>> genRanges(std::span<const Entry> keyset, const QuerySpec& spec) {
  Rng rng(spec.seed);
  const MissSampler misses(keyset, spec.width);
  const auto& sorted = misses.sorted();
  const std::uint64_t hits = sorted.empty() ? 0 : hitCount(spec);
  const std::uint64_t span = std::max<std::uint64_t>(spec.rangeHits, 1);

  std::vector<std::pair<Key, Key>> out;
  out.reserve(spec.batchSize);
  for (std::uint64_t i = 0; i < hits; ++i) {
    const std::size_t first = rng.below(sorted.size());
    const std::size_t last = std::min<std::size_t>(first + span - 1, sorted.size() - 1);
    out.emplace_back(sorted[first], sorted[last]);
  }
  for (std::uint64_t i = hits; i < spec.batchSize; ++i) {
    const auto k = misses.miss(rng, spec.missKind);
    if (!k) {
      const Key l = sorted[rng.below(sorted.size())];
      out.emplace_back(l, l);
      continue;
    }
    // Stay clear of the next stored key so the range stays empty.
    const auto next = std::upper_bound(sorted.begin(), sorted.end(), *k);
    const Key cap = next == sorted.end() ? widthMax(spec.width) : *next - 1;
    out.emplace_back(*k, *k + std::min<Key>(span, cap - *k));
  }
  rng.shuffle(std::span<std::pair<Key, Key>>(out));
  return out;
}

std::vector<UpdateWave> genUpdateWaves(std::span<const Entry> keyset, unsigned waves, double growth,
                                       unsigned width, std::uint64_t seed) {
  const Key limit = widthMax(width);
  Rng rng(seed);
  std::unordered_set<Key> present;
  present.reserve(keyset.size() * static_cast<std::size_t>(std::max(growth, 1.0)) + 1);
  RowId nextRow = 0;
  for (const Entry& e : keyset) {
    present.insert(e.key);
    nextRow = std::max(nextRow, e.rowId + 1);
  }

  const auto total = static_cast<std::uint64_t>(
      std::floor(std::max(growth - 1.0, 0.0) * static_cast<double>(keyset.size())));
  if (width == 32 && total + present.size() > limit) {
    throw Error(ErrorCode::KeySpaceExhausted, "update waves exceed the key space");
  }

  std::vector<UpdateWave> out(2 * std::size_t{waves});
  for (unsigned w = 0; w < waves; ++w) {
    const std::uint64_t count = total / waves + (w < total % waves ? 1 : 0);
    auto& inserts = out[w].inserts;
    inserts.reserve(count);
    while (inserts.size() < count) {
      const Key k = drawBetween(rng, 0, limit);
      if (present.insert(k).second) inserts.push_back({k, nextRow++});
    }
  }
  for (unsigned w = 0; w < waves; ++w) {
    for (const Entry& e : out[waves - 1 - w].inserts) out[waves + w].deletes.push_back(e.key);
  }
  return out;
}

std::string keysetSpecJson(const KeysetSpec& spec) {
  return nlohmann::json{{"count", spec.count},
                        {"width", spec.width},
                        {"uniformity", spec.uniformity},
                        {"seed", spec.seed},
                        {"dense", denseCount(spec)}}
      .dump();
}

} // namespace cgrx
