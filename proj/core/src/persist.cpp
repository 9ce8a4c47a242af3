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

#include "cgrx/persist.hpp"

#include "cgrx/binary_io.hpp"
#include "json_util.hpp"

#include <fstream>

namespace cgrx {

void writeScene(std::ostream& out, const SceneBuffer& scene) {
  writeU64(out, scene.size());
  writeU64(out, scene.numBuckets());
  writeU64(out, static_cast<std::uint64_t>(scene.layout()) | (scene.multiLine() << 1) |
                    (scene.multiPlane() << 2));
  writeU64(out, scene.triangleCount());
  for (PrimitiveIndex i = 0; i < scene.size(); ++i) {
    const auto& tri = scene[i];
    if (!tri) continue;
    writeU64(out, i);
    writeU64(out, static_cast<std::uint64_t>(tri->anchor.x));
    writeU64(out, static_cast<std::uint64_t>(tri->anchor.y));
    writeU64(out, static_cast<std::uint64_t>(tri->anchor.z));
    writeU64(out, static_cast<std::uint64_t>(tri->role) | (std::uint64_t{tri->flipped} << 8));
  }
}

SceneBuffer readScene(std::istream& in) {
  const std::uint64_t slots = readU64(in);
  const std::uint64_t buckets = readU64(in);
  const std::uint64_t flags = readU64(in);
  const std::uint64_t count = readU64(in);
  if (count > slots) throw Error(ErrorCode::Format, "scene holds more triangles than slots");
  SceneBuffer scene(slots, buckets, static_cast<Layout>(flags & 1), (flags >> 1) & 1,
                    (flags >> 2) & 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t slot = readU64(in);
    Triangle tri;
    tri.anchor.x = static_cast<std::int64_t>(readU64(in));
    tri.anchor.y = static_cast<std::int64_t>(readU64(in));
    tri.anchor.z = static_cast<std::int64_t>(readU64(in));
    const std::uint64_t bits = readU64(in);
    tri.role = static_cast<TriangleRole>(bits & 0xff);
    tri.flipped = (bits >> 8) & 1;
    if (slot >= slots || (bits & 0xff) > 2) throw Error(ErrorCode::Format, "bad scene record");
    scene.place(slot, tri);
  }
  return scene;
}

void saveIndex(const std::filesystem::path& path, const CgrxIndex& index) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot create " + path.string());
  const CgrxConfig& c = index.config();
  nlohmann::json header = {
      {"format", "cgrx-index"},
      {"version", 1},
      {"variant", toString(c.variant)},
      {"bucketSize", c.bucketSize},
      {"mapping", mappingToJson(c.mapping)},
      {"backend", toString(c.backend)},
      {"entries", index.store().size()},
  };
  out << header.dump() << '\n';
  for (const Entry& e : index.store().entries()) {
    writeU64(out, e.key);
    writeU64(out, e.rowId);
  }
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

CgrxIndex loadIndex(const std::filesystem::path& path, std::optional<Backend> backend) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  const auto header = nlohmann::json::parse(readHeaderLine(in));
  if (header.value("format", "") != "cgrx-index") {
    throw Error(ErrorCode::Format, path.string() + " is not a cgrx index file");
  }
  CgrxConfig c;
  c.variant = variantFromName(header.at("variant").get<std::string>());
  c.bucketSize = header.at("bucketSize").get<std::uint64_t>();
  c.mapping = mappingFromJson(header.at("mapping"));
  c.backend = backend.value_or(backendFromName(header.at("backend").get<std::string>()));
  std::vector<std::uint64_t> words(2 * header.at("entries").get<std::uint64_t>());
  readU64s(in, words);
  std::vector<Entry> pairs(words.size() / 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i] = {words[2 * i], words[2 * i + 1]};
  return CgrxIndex::build(std::move(pairs), c);
}

void saveState(const std::filesystem::path& path, const CgrxuIndex& index) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot create " + path.string());
  index.save(out);
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

CgrxuIndex loadState(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return CgrxuIndex::load(in);
}

} // namespace cgrx
