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

#include "cgrx/keymap.hpp"

#include <bit>

namespace cgrx {

const char* toString(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyKeySet:
      return "EmptyKeySet";
    case ErrorCode::CoordinateOutOfRange:
      return "CoordinateOutOfRange";
    case ErrorCode::InvalidMapping:
      return "InvalidMapping";
    case ErrorCode::UnsortedInput:
      return "UnsortedInput";
    case ErrorCode::InvalidNodeCapacity:
      return "InvalidNodeCapacity";
    case ErrorCode::InvalidBucketSize:
      return "InvalidBucketSize";
    case ErrorCode::KeySpaceExhausted:
      return "KeySpaceExhausted";
    case ErrorCode::UnsupportedConfig:
      return "UnsupportedConfig";
    case ErrorCode::Io:
      return "Io";
    case ErrorCode::Format:
      return "Format";
  }
  return "Unknown";
}

KeyMapping KeyMapping::simple() { return {3, 2, 59, 1, 1}; }

KeyMapping KeyMapping::defaultUnscaled() { return {23, 23, 18, 1, 1}; }

KeyMapping KeyMapping::defaultScaled() {
  return {23, 23, 18, std::uint64_t{1} << 15, std::uint64_t{1} << 25};
}

KeyMapping KeyMapping::fromName(std::string_view name) {
  if (name == "simple") return simple();
  if (name == "default-unscaled") return defaultUnscaled();
  if (name == "default-scaled") return defaultScaled();
  throw Error(ErrorCode::InvalidMapping, "unknown mapping preset '" + std::string(name) + "'");
}

std::string mappingName(const KeyMapping& m) {
  if (m == KeyMapping::simple()) return "simple";
  if (m == KeyMapping::defaultUnscaled()) return "default-unscaled";
  if (m == KeyMapping::defaultScaled()) return "default-scaled";
  return "custom";
}

std::int64_t KeyMapping::zMax() const {
  return static_cast<std::int64_t>((std::uint64_t{1} << zBits) - 1);
}

void KeyMapping::validate() const {
  if (xBits == 0 || yBits == 0 || xBits > 23 || yBits > 23) {
    throw Error(ErrorCode::InvalidMapping, "x and y must use between 1 and 23 bits");
  }
  if (xBits + yBits + zBits != 64) {
    throw Error(ErrorCode::InvalidMapping, "bit split must cover exactly 64 bits");
  }
  if (!std::has_single_bit(yScale) || !std::has_single_bit(zScale)) {
    throw Error(ErrorCode::InvalidMapping, "scales must be powers of two");
  }
  // Scaled coordinates are kept in signed 64-bit arithmetic.
  if (std::bit_width(yScale) - 1 + yBits > 62 || std::bit_width(zScale) - 1 + zBits > 62) {
    throw Error(ErrorCode::InvalidMapping, "scaled coordinates exceed 62 bits");
  }
}

GridPoint mapKey(Key key, const KeyMapping& m) {
  const Key xMask = (Key{1} << m.xBits) - 1;
  const Key yMask = (Key{1} << m.yBits) - 1;
  return GridPoint{
      static_cast<std::int64_t>(key & xMask),
      static_cast<std::int64_t>((key >> m.xBits) & yMask),
      static_cast<std::int64_t>(key >> (m.xBits + m.yBits)),
  };
}

Key unmapPoint(const GridPoint& p, const KeyMapping& m) {
  if (p.x < 0 || p.x > m.xMax() || p.y < 0 || p.y > m.yMax() || p.z < 0 || p.z > m.zMax()) {
    throw Error(ErrorCode::CoordinateOutOfRange, "grid point outside the mapping's bit budget");
  }
  return static_cast<Key>(p.x) | (static_cast<Key>(p.y) << m.xBits) |
         (static_cast<Key>(p.z) << (m.xBits + m.yBits));
}

std::array<float, 3> scaledCoords(const GridPoint& p, const KeyMapping& m) {
  return {
      static_cast<float>(p.x),
      static_cast<float>(p.y) * static_cast<float>(m.yScale),
      static_cast<float>(p.z) * static_cast<float>(m.zScale),
  };
}

std::array<double, 3> worldCoords(const GridPoint& p, const KeyMapping& m) {
  return {
      static_cast<double>(p.x),
      static_cast<double>(p.y) * static_cast<double>(m.yScale),
      static_cast<double>(p.z) * static_cast<double>(m.zScale),
  };
}

} // namespace cgrx
