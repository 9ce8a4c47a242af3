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

#include "cgrx/binary_io.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

namespace cgrx {

namespace {

std::array<char, 8> encode(std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  return b;
}

std::uint64_t decode(const char* b) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t{static_cast<unsigned char>(b[i])} << (8 * i);
  return v;
}

std::vector<std::uint64_t> readWords(const std::filesystem::path& path, std::size_t perRecord) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() % (8 * perRecord) != 0) {
    throw Error(ErrorCode::Format, path.string() + ": size " + std::to_string(bytes.size()) +
                                       " is not a multiple of " + std::to_string(8 * perRecord));
  }
  std::vector<std::uint64_t> words(bytes.size() / 8);
  for (std::size_t i = 0; i < words.size(); ++i) words[i] = decode(bytes.data() + 8 * i);
  return words;
}

void writeWords(const std::filesystem::path& path, std::span<const std::uint64_t> words) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot create " + path.string());
  writeU64s(out, words);
  if (!out) throw Error(ErrorCode::Io, "write failed: " + path.string());
}

} // namespace

void writeU64(std::ostream& out, std::uint64_t v) {
  const auto b = encode(v);
  out.write(b.data(), b.size());
}

std::uint64_t readU64(std::istream& in) {
  std::array<char, 8> b{};
  if (!in.read(b.data(), b.size())) throw Error(ErrorCode::Format, "unexpected end of data");
  return decode(b.data());
}

void writeU64s(std::ostream& out, std::span<const std::uint64_t> values) {
  std::vector<char> buf(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto b = encode(values[i]);
    std::copy(b.begin(), b.end(), buf.begin() + 8 * i);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void readU64s(std::istream& in, std::span<std::uint64_t> values) {
  std::vector<char> buf(values.size() * 8);
  if (!in.read(buf.data(), static_cast<std::streamsize>(buf.size()))) {
    throw Error(ErrorCode::Format, "unexpected end of data");
  }
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = decode(buf.data() + 8 * i);
}

std::vector<Key> readKeyFile(const std::filesystem::path& path) { return readWords(path, 1); }

void writeKeyFile(const std::filesystem::path& path, std::span<const Key> keys) {
  writeWords(path, keys);
}

std::vector<Entry> readPairFile(const std::filesystem::path& path) {
  const auto words = readWords(path, 2);
  std::vector<Entry> pairs(words.size() / 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i] = {words[2 * i], words[2 * i + 1]};
  return pairs;
}

void writePairFile(const std::filesystem::path& path, std::span<const Entry> pairs) {
  std::vector<std::uint64_t> words;
  words.reserve(pairs.size() * 2);
  for (const Entry& e : pairs) {
    words.push_back(e.key);
    words.push_back(e.rowId);
  }
  writeWords(path, words);
}

std::vector<std::pair<Key, Key>> readRangeFile(const std::filesystem::path& path) {
  const auto words = readWords(path, 2);
  std::vector<std::pair<Key, Key>> ranges(words.size() / 2);
  for (std::size_t i = 0; i < ranges.size(); ++i) ranges[i] = {words[2 * i], words[2 * i + 1]};
  return ranges;
}

void writeRangeFile(const std::filesystem::path& path,
                    std::span<const std::pair<Key, Key>> ranges) {
  std::vector<std::uint64_t> words;
  words.reserve(ranges.size() * 2);
  for (const auto& [l, u] : ranges) {
    words.push_back(l);
    words.push_back(u);
  }
  writeWords(path, words);
}

std::string readHeaderLine(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Format, "missing header line");
  return line;
}

} // namespace cgrx
