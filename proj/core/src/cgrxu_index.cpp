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

#include "cgrx/cgrxu_index.hpp"

#include "cgrx/binary_io.hpp"
#include "cgrx/parallel.hpp"
#include "cgrx/persist.hpp"
#include "json_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <istream>
#include <numeric>
#include <ostream>

namespace cgrx {

void NodeRegion::resize(std::uint32_t nodes) {
  keys_.resize(std::size_t{nodes} * capacity_);
  rows_.resize(std::size_t{nodes} * capacity_);
  maxKey_.resize(nodes, 0);
  next_.resize(nodes, kNoNode);
  size_.resize(nodes, 0);
}

UpdateStats& UpdateStats::operator+=(const UpdateStats& o) {
  nodesTouched += o.nodesTouched;
  splits += o.splits;
  allocations += o.allocations;
  insertedPairs += o.insertedPairs;
  deletedPairs += o.deletedPairs;
  absentDeletes += o.absentDeletes;
  eliminatedKeys += o.eliminatedKeys;
  buildCount = std::max(buildCount, o.buildCount);
  return *this;
}

CgrxuIndex CgrxuIndex::bulkLoad(std::span<const Entry> pairs, const CgrxuConfig& config) {
  config.mapping.validate();
  const std::uint32_t n = config.nodeCapacity;
  if (n < 2 || n % 2 != 0) {
    throw Error(ErrorCode::InvalidNodeCapacity,
                "node capacity must be even and >= 2, got " + std::to_string(n));
  }
  if (pairs.empty()) throw Error(ErrorCode::EmptyKeySet, "key set is empty");
  const bool sorted = std::is_sorted(pairs.begin(), pairs.end(),
                                     [](const Entry& a, const Entry& b) { return a.key < b.key; });
  if (!sorted) throw Error(ErrorCode::UnsortedInput, "bulk-load pairs must be sorted by key");

  const std::uint64_t half = n / 2;
  const std::uint64_t nb = (pairs.size() + half - 1) / half;
  if (nb + 1 >= kNoNode) throw Error(ErrorCode::UnsupportedConfig, "too many buckets");

  CgrxuIndex idx;
  idx.config_ = config;
  idx.reps_ = NodeRegion(n);
  idx.linked_ = NodeRegion(n);
  idx.reps_.resize(static_cast<std::uint32_t>(nb + 1));
  idx.fences_.resize(nb + 1);
  for (std::uint32_t b = 0; b < nb; ++b) {
    const std::size_t begin = b * half;
    const std::size_t end = std::min<std::size_t>(begin + half, pairs.size());
    for (std::size_t i = begin; i < end; ++i) {
      idx.reps_.keys(b)[i - begin] = pairs[i].key;
      idx.reps_.rows(b)[i - begin] = pairs[i].rowId;
    }
    idx.reps_.size(b) = static_cast<std::uint32_t>(end - begin);
    idx.fences_[b] = pairs[end - 1].key;
    idx.reps_.maxKey(b) = idx.fences_[b];
  }
  idx.fences_[nb] = kOverflowFence;
  idx.reps_.maxKey(static_cast<std::uint32_t>(nb)) = kOverflowFence;

  std::vector<Key> keys(pairs.size());
  std::transform(pairs.begin(), pairs.end(), keys.begin(), [](const Entry& e) { return e.key; });
  idx.scene_ = std::make_unique<SceneBuffer>(buildOptimizedScene(keys, half, config.mapping));
  ++idx.buildCount_;
  idx.attachCaster();
  return idx;
}

void CgrxuIndex::attachCaster() {
  caster_ = makeCaster(config_.backend, *scene_, config_.mapping);
  locator_ = BucketLocator(*scene_, *caster_, config_.mapping, fences_.front(),
                           fences_[fences_.size() - 2]);
}

BucketId CgrxuIndex::bucketFor(Key key, LocateTrace* trace, CastStats* stats) const {
  const auto located = locator_.locate(key, trace, stats);
  BucketId b = located ? *located : overflowBucket();
  // An absent key next to a moved representative resolves one bucket early.
  while (fences_[b] < key) ++b;
  return b;
}

std::optional<NodeRef> CgrxuIndex::nextOf(NodeRef r) const {
  const std::uint32_t n = region(r).next(r.index);
  if (n == kNoNode) return std::nullopt;
  return NodeRef{true, n};
}

CgrxuIndex::Cursor CgrxuIndex::seek(BucketId b, Key key) const {
  NodeRef r{false, static_cast<std::uint32_t>(b)};
  while (region(r).maxKey(r.index) < key) {
    const auto n = nextOf(r);
    if (!n) break;
    r = *n;
  }
  const NodeRegion& reg = region(r);
  const Key* keys = reg.keys(r.index);
  const auto pos = std::lower_bound(keys, keys + reg.size(r.index), key) - keys;
  return Cursor{b, r, static_cast<std::uint32_t>(pos)};
}

template <class Fn>
void CgrxuIndex::scanFrom(Cursor c, Fn&& fn) const {
  for (;;) {
    const NodeRegion& reg = region(c.node);
    const Key* keys = reg.keys(c.node.index);
    const RowId* rows = reg.rows(c.node.index);
    for (; c.pos < reg.size(c.node.index); ++c.pos) {
      if (!fn(keys[c.pos], rows[c.pos])) return;
    }
    if (const auto n = nextOf(c.node)) {
      c.node = *n;
    } else {
      if (++c.bucket >= numBuckets()) return;
      c.node = NodeRef{false, static_cast<std::uint32_t>(c.bucket)};
    }
    c.pos = 0;
  }
}

std::vector<RowId> CgrxuIndex::lookup(Key key, LocateTrace* trace, CastStats* stats) const {
  std::vector<RowId> rows;
  scanFrom(seek(bucketFor(key, trace, stats), key), [&](Key k, RowId r) {
    if (k != key) return false;
    rows.push_back(r);
    return true;
  });
  return rows;
}

std::vector<RowId> CgrxuIndex::rangeLookup(Key l, Key u, LocateTrace* trace,
                                           CastStats* stats) const {
  std::vector<RowId> rows;
  if (l > u) return rows;
  scanFrom(seek(bucketFor(l, trace, stats), l), [&](Key k, RowId r) {
    if (k > u) return false;
    rows.push_back(r);
    return true;
  });
  return rows;
}

std::vector<LookupResult> CgrxuIndex::lookupBatch(std::span<const Key> keys, BatchStats* stats,
                                                  unsigned threads) const {
  std::vector<LookupResult> results(keys.size());
  if (threads == 0) threads = defaultThreads();
  std::vector<BatchStats> perWorker(threads);
  parallelFor(keys.size(), threads, [&](std::size_t begin, std::size_t end, unsigned w) {
    BatchStats& local = perWorker[w];
    for (std::size_t i = begin; i < end; ++i) {
      LocateTrace trace;
      const auto rows = lookup(keys[i], &trace, &local.cast);
      local.record(trace);
      ++local.bucketProbes;
      results[i] = {rows.size(), std::accumulate(rows.begin(), rows.end(), RowId{0})};
      local.hits += !rows.empty();
      local.resultRows += rows.size();
    }
  });
  if (stats) {
    for (const auto& s : perWorker) *stats += s;
  }
  return results;
}

std::uint32_t CgrxuIndex::allocateLinked() {
  const std::uint32_t i = std::atomic_ref<std::uint32_t>(linkedUsed_).fetch_add(1);
  if (i >= linked_.nodes()) throw std::logic_error("linked region exhausted during a batch");
  linked_.size(i) = 0;
  linked_.next(i) = kNoNode;
  return i;
}

void CgrxuIndex::applyBucket(BucketId b, std::span<const Entry> inserts,
                             std::span<const Key> deletes, std::uint8_t* deleteHit,
                             UpdateStats& stats) {
  const std::uint32_t cap = config_.nodeCapacity;
  std::vector<NodeRef> touched;
  const NodeRef head{false, static_cast<std::uint32_t>(b)};

  if (!deletes.empty()) {
    for (std::optional<NodeRef> r = head; r; r = nextOf(*r)) {
      NodeRegion& reg = region(*r);
      Key* keys = reg.keys(r->index);
      RowId* rows = reg.rows(r->index);
      std::uint32_t out = 0;
      for (std::uint32_t i = 0; i < reg.size(r->index); ++i) {
        const auto it = std::lower_bound(deletes.begin(), deletes.end(), keys[i]);
        if (it != deletes.end() && *it == keys[i]) {
          std::atomic_ref<std::uint8_t>(deleteHit[it - deletes.begin()])
              .store(1, std::memory_order_relaxed);
          continue;
        }
        keys[out] = keys[i];
        rows[out] = rows[i];
        ++out;
      }
      if (out != reg.size(r->index)) {
        stats.deletedPairs += reg.size(r->index) - out;
        reg.size(r->index) = out;
        touched.push_back(*r);
      }
    }
  }

  NodeRef cur = head;
  for (const Entry& e : inserts) {
    while (region(cur).maxKey(cur.index) < e.key) cur = *nextOf(cur);

    if (region(cur).size(cur.index) == cap) {
      const std::uint32_t fresh = allocateLinked();
      NodeRegion& reg = region(cur);
      const std::uint32_t half = cap / 2;
      std::copy(reg.keys(cur.index) + half, reg.keys(cur.index) + cap, linked_.keys(fresh));
      std::copy(reg.rows(cur.index) + half, reg.rows(cur.index) + cap, linked_.rows(fresh));
      linked_.size(fresh) = cap - half;
      reg.size(cur.index) = half;
      linked_.maxKey(fresh) = reg.maxKey(cur.index);
      reg.maxKey(cur.index) = reg.keys(cur.index)[half - 1];
      linked_.next(fresh) = reg.next(cur.index);
      reg.next(cur.index) = fresh;
      ++stats.splits;
      ++stats.allocations;
      touched.push_back(NodeRef{true, fresh});
      if (e.key > reg.maxKey(cur.index)) cur = NodeRef{true, fresh};
    }

    NodeRegion& reg = region(cur);
    Key* keys = reg.keys(cur.index);
    RowId* rows = reg.rows(cur.index);
    const std::uint32_t size = reg.size(cur.index);
    const auto pos = static_cast<std::uint32_t>(std::upper_bound(keys, keys + size, e.key) - keys);
    std::copy_backward(keys + pos, keys + size, keys + size + 1);
    std::copy_backward(rows + pos, rows + size, rows + size + 1);
    keys[pos] = e.key;
    rows[pos] = e.rowId;
    reg.size(cur.index) = size + 1;
    ++stats.insertedPairs;
    touched.push_back(cur);
  }

  std::sort(touched.begin(), touched.end(), [](NodeRef a, NodeRef b) {
    return a.linked != b.linked ? a.linked < b.linked : a.index < b.index;
  });
  stats.nodesTouched += std::unique(touched.begin(), touched.end()) - touched.begin();
}

UpdateStats CgrxuIndex::applyBatch(std::span<const Entry> insertsIn, std::span<const Key> deletesIn,
                                   const ApplyOptions& options) {
  std::vector<Entry> inserts(insertsIn.begin(), insertsIn.end());
  std::vector<Key> deletes(deletesIn.begin(), deletesIn.end());
  std::sort(inserts.begin(), inserts.end(), EntryLess{});
  std::sort(deletes.begin(), deletes.end());
  deletes.erase(std::unique(deletes.begin(), deletes.end()), deletes.end());

  UpdateStats stats;
  std::vector<Key> both;
  for (auto it = inserts.begin(); it != inserts.end(); ++it) {
    if (std::binary_search(deletes.begin(), deletes.end(), it->key) &&
        (both.empty() || both.back() != it->key)) {
      both.push_back(it->key);
    }
  }
  if (!both.empty()) {
    stats.eliminatedKeys = both.size();
    std::erase_if(inserts, [&](const Entry& e) {
      return std::binary_search(both.begin(), both.end(), e.key);
    });
    std::erase_if(deletes, [&](Key k) { return std::binary_search(both.begin(), both.end(), k); });
  }

  // Each insert allocates at most one node, so this bounds the batch.
  const std::uint64_t need = std::uint64_t{linkedUsed_} + inserts.size();
  if (need >= kNoNode) throw Error(ErrorCode::UnsupportedConfig, "linked region too large");
  if (need > linked_.nodes()) {
    std::uint64_t grown = std::max<std::uint64_t>(linked_.nodes(), 16);
    while (grown < need) grown *= 2;
    linked_.resize(static_cast<std::uint32_t>(std::min<std::uint64_t>(grown, kNoNode - 1)));
  }

  const std::uint64_t nb = numBuckets();
  std::vector<BucketId> identity;
  const std::vector<BucketId>* order = options.bucketOrder;
  if (!order) {
    identity.resize(nb);
    std::iota(identity.begin(), identity.end(), BucketId{0});
    order = &identity;
  } else if (order->size() != nb) {
    throw Error(ErrorCode::UnsupportedConfig, "bucket order must list every bucket once");
  }

  auto insertBound = [&](Key k) {
    return std::upper_bound(inserts.begin(), inserts.end(), k,
                            [](Key v, const Entry& e) { return v < e.key; }) -
           inserts.begin();
  };
  std::vector<std::uint8_t> deleteHit(deletes.size(), 0);
  const unsigned threads = options.threads == 0 ? defaultThreads() : options.threads;
  std::vector<UpdateStats> perWorker(threads);
  parallelFor(nb, threads, [&](std::size_t begin, std::size_t end, unsigned w) {
    for (std::size_t i = begin; i < end; ++i) {
      const BucketId b = (*order)[i];
      const Key hi = fences_[b];
      // Inserts cover (fence[b-1], fence[b]]; deletes also include the lower
      // fence, since duplicates of a fence key may sit in the next bucket.
      const auto insBegin = b == 0 ? 0 : insertBound(fences_[b - 1]);
      const auto insEnd = insertBound(hi);
      const auto delBegin =
          b == 0
              ? 0
              : std::lower_bound(deletes.begin(), deletes.end(), fences_[b - 1]) - deletes.begin();
      const auto delEnd = std::upper_bound(deletes.begin(), deletes.end(), hi) - deletes.begin();
      if (insBegin >= insEnd && delBegin >= delEnd) continue;
      applyBucket(
          b,
          std::span<const Entry>(inserts).subspan(insBegin, std::max(insBegin, insEnd) - insBegin),
          std::span<const Key>(deletes).subspan(delBegin, std::max(delBegin, delEnd) - delBegin),
          deleteHit.data() + delBegin, perWorker[w]);
    }
  });

  for (const auto& s : perWorker) stats += s;
  stats.absentDeletes = std::count(deleteHit.begin(), deleteHit.end(), 0);
  stats.buildCount = buildCount_;
  return stats;
}

std::vector<ChainNodeView> CgrxuIndex::chain(BucketId b) const {
  std::vector<ChainNodeView> out;
  for (std::optional<NodeRef> r = NodeRef{false, static_cast<std::uint32_t>(b)}; r;
       r = nextOf(*r)) {
    const NodeRegion& reg = region(*r);
    ChainNodeView view{*r, reg.maxKey(r->index), {}};
    for (std::uint32_t i = 0; i < reg.size(r->index); ++i) {
      view.entries.push_back({reg.keys(r->index)[i], reg.rows(r->index)[i]});
    }
    out.push_back(std::move(view));
  }
  return out;
}

std::vector<Entry> CgrxuIndex::contents() const {
  std::vector<Entry> out;
  out.reserve(size());
  for (BucketId b = 0; b < numBuckets(); ++b) {
    for (const auto& node : chain(b))
      out.insert(out.end(), node.entries.begin(), node.entries.end());
  }
  return out;
}

std::uint64_t CgrxuIndex::size() const {
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < reps_.nodes(); ++i) total += reps_.size(i);
  for (std::uint32_t i = 0; i < linkedUsed_; ++i) total += linked_.size(i);
  return total;
}

std::uint64_t CgrxuIndex::nodeBytes() const {
  return (std::uint64_t{reps_.nodes()} + linked_.nodes()) * nodeFootprint(config_.nodeCapacity);
}

namespace {

void writeNodes(std::ostream& out, const NodeRegion& reg, std::uint32_t count) {
  for (std::uint32_t i = 0; i < count; ++i) {
    writeU64(out, reg.size(i));
    writeU64(out, reg.maxKey(i));
    writeU64(out, reg.next(i));
    writeU64s(out, std::span<const Key>(reg.keys(i), reg.capacity()));
    writeU64s(out, std::span<const RowId>(reg.rows(i), reg.capacity()));
  }
}

void readNodes(std::istream& in, NodeRegion& reg, std::uint32_t count) {
  for (std::uint32_t i = 0; i < count; ++i) {
    reg.size(i) = static_cast<std::uint32_t>(readU64(in));
    reg.maxKey(i) = readU64(in);
    reg.next(i) = static_cast<std::uint32_t>(readU64(in));
    if (reg.size(i) > reg.capacity()) throw Error(ErrorCode::Format, "node size exceeds capacity");
    readU64s(in, std::span<Key>(reg.keys(i), reg.capacity()));
    readU64s(in, std::span<RowId>(reg.rows(i), reg.capacity()));
  }
}

} // namespace

void CgrxuIndex::save(std::ostream& out) const {
  nlohmann::json header = {
      {"format", "cgrxu-state"},
      {"version", 1},
      {"nodeCapacity", config_.nodeCapacity},
      {"mapping", mappingToJson(config_.mapping)},
      {"backend", toString(config_.backend)},
      {"buckets", fences_.size()},
      {"linkedUsed", linkedUsed_},
      {"buildCount", buildCount_},
  };
  out << header.dump() << '\n';
  writeU64s(out, fences_);
  writeScene(out, *scene_);
  writeNodes(out, reps_, reps_.nodes());
  writeNodes(out, linked_, linkedUsed_);
}

CgrxuIndex CgrxuIndex::load(std::istream& in) {
  const auto header = nlohmann::json::parse(readHeaderLine(in));
  if (header.value("format", "") != "cgrxu-state") {
    throw Error(ErrorCode::Format, "not a cgrxu state file");
  }
  CgrxuIndex idx;
  idx.config_.nodeCapacity = header.at("nodeCapacity").get<std::uint32_t>();
  idx.config_.mapping = mappingFromJson(header.at("mapping"));
  idx.config_.backend = backendFromName(header.at("backend").get<std::string>());
  idx.buildCount_ = header.at("buildCount").get<std::uint64_t>();
  const auto buckets = header.at("buckets").get<std::uint32_t>();
  idx.linkedUsed_ = header.at("linkedUsed").get<std::uint32_t>();
  if (buckets < 2) throw Error(ErrorCode::Format, "state holds no buckets");

  idx.fences_.resize(buckets);
  readU64s(in, idx.fences_);
  idx.scene_ = std::make_unique<SceneBuffer>(readScene(in));
  idx.reps_ = NodeRegion(idx.config_.nodeCapacity);
  idx.reps_.resize(buckets);
  readNodes(in, idx.reps_, buckets);
  idx.linked_ = NodeRegion(idx.config_.nodeCapacity);
  idx.linked_.resize(idx.linkedUsed_);
  readNodes(in, idx.linked_, idx.linkedUsed_);
  idx.attachCaster();
  return idx;
}

} // namespace cgrx
