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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgrx {

using Key = std::uint64_t;
using RowId = std::uint64_t;
using BucketId = std::uint64_t;
/// Position of a triangle in the slot buffer.
using PrimitiveIndex = std::uint64_t;

struct Entry {
  Key key = 0;
  RowId rowId = 0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Orders by key, then rowID, so that sorting is deterministic with duplicates.
struct EntryLess {
  bool operator()(const Entry& a, const Entry& b) const {
    return a.key != b.key ? a.key < b.key : a.rowId < b.rowId;
  }
};

enum class ErrorCode {
  EmptyKeySet,
  CoordinateOutOfRange,
  InvalidMapping,
  UnsortedInput,
  InvalidNodeCapacity,
  InvalidBucketSize,
  KeySpaceExhausted,
  UnsupportedConfig,
  Io,
  Format,
};

const char* toString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

} // namespace cgrx
