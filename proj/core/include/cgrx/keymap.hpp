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

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace cgrx {

/// Splits a 64-bit key into x (low bits), y (middle bits) and z (high bits)
/// grid coordinates. y and z are multiplied by a power-of-two scale when the
/// grid is materialized as geometry.
struct KeyMapping {
  unsigned xBits = 23;
  unsigned yBits = 23;
  unsigned zBits = 18;
  std::uint64_t yScale = 1;
  std::uint64_t zScale = 1;

  /// 3/2/59 split used by the small worked examples.
  static KeyMapping simple();
  /// 23/23/18 split without scaling.
  static KeyMapping defaultUnscaled();
  /// 23/23/18 split with y scaled by 2^15 and z by 2^25.
  static KeyMapping defaultScaled();

  /// Accepts `simple`, `default-unscaled` and `default-scaled`.
  static KeyMapping fromName(std::string_view name);

  /// Throws Error(InvalidMapping) when the bit split or a scale is not legal.
  void validate() const;

  std::int64_t xMax() const { return (std::int64_t{1} << xBits) - 1; }
  std::int64_t yMax() const { return (std::int64_t{1} << yBits) - 1; }
  std::int64_t zMax() const;

  friend bool operator==(const KeyMapping&, const KeyMapping&) = default;
};

/// Name of the preset matching `m`, or "custom".
std::string mappingName(const KeyMapping& m);

/// Unscaled integer lattice position. Markers use -1 on x and/or y, so the
/// coordinates are signed.
struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

GridPoint mapKey(Key key, const KeyMapping& m);

/// Inverse of mapKey. Throws Error(CoordinateOutOfRange) when a coordinate
/// does not fit its bit budget.
Key unmapPoint(const GridPoint& p, const KeyMapping& m);

/// (x, yScale*y, zScale*z) as floats.
std::array<float, 3> scaledCoords(const GridPoint& p, const KeyMapping& m);

/// Same as scaledCoords but in double precision; used by the BVH bounds.
std::array<double, 3> worldCoords(const GridPoint& p, const KeyMapping& m);

/// Row and plane identity of a key: (z, y) and z.
inline bool sameRow(const GridPoint& a, const GridPoint& b) { return a.y == b.y && a.z == b.z; }
inline bool samePlane(const GridPoint& a, const GridPoint& b) { return a.z == b.z; }

} // namespace cgrx
