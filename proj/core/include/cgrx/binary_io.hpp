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
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cgrx {

/// Little-endian 64-bit words, independent of host byte order.
void writeU64(std::ostream& out, std::uint64_t v);
std::uint64_t readU64(std::istream& in);
void writeU64s(std::ostream& out, std::span<const std::uint64_t> values);
void readU64s(std::istream& in, std::span<std::uint64_t> values);

/// Raw batch files: keys are 8-byte words, pairs and ranges 16-byte records.
/// Throw Error(Io) when a file cannot be opened and Error(Format) when its
/// size is not a whole number of records.
std::vector<Key> readKeyFile(const std::filesystem::path& path);
void writeKeyFile(const std::filesystem::path& path, std::span<const Key> keys);
std::vector<Entry> readPairFile(const std::filesystem::path& path);
void writePairFile(const std::filesystem::path& path, std::span<const Entry> pairs);
std::vector<std::pair<Key, Key>> readRangeFile(const std::filesystem::path& path);
void writeRangeFile(const std::filesystem::path& path, std::span<const std::pair<Key, Key>> ranges);

/// Reads one '\n'-terminated line; used for the JSON header of index files.
std::string readHeaderLine(std::istream& in);

} // namespace cgrx
