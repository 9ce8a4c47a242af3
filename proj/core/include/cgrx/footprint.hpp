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

#include "cgrx/baselines.hpp"
#include "cgrx/cgrx_index.hpp"
#include "cgrx/cgrxu_index.hpp"

#include <cstdint>
#include <string>

namespace cgrx {

/// Bytes per materialized triangle: nine 4-byte floats.
inline constexpr std::uint64_t kTriangleBytes = 36;
inline constexpr std::uint64_t kEntryBytes = 16;
inline constexpr std::uint64_t kKeyBytes = 8;

struct FootprintReport {
  std::string structure;
  std::uint64_t keys = 0;
  std::uint64_t triangles = 0;
  /// kTriangleBytes per materialized triangle.
  std::uint64_t triangleBytes = 0;
  /// kTriangleBytes per allocated slot, including absent ones.
  std::uint64_t vertexBufferBytes = 0;
  std::uint64_t entryBytes = 0;
  std::uint64_t nodeBytes = 0;
  /// Host-side acceleration structure; not comparable to hardware BVHs.
  std::uint64_t emulatorBvhBytes = 0;
  std::uint64_t payloadKeyBytes = 0;
  /// Bytes that encode the keys: payload keys plus the geometry (or the
  /// triangles alone when they are the only key encoding).
  std::uint64_t representationBytes = 0;
  /// Comparable total used for throughput per footprint.
  std::uint64_t totalBytes = 0;
  /// Share of representationBytes that is not key payload, in percent.
  double overheadPercent = 0.0;
};

FootprintReport computeFootprint(const CgrxIndex& index);
FootprintReport computeFootprint(const CgrxuIndex& index);
FootprintReport computeFootprint(const RxEmulated& index);
FootprintReport computeFootprint(const SortedArrayIndex& index);
FootprintReport computeFootprint(const HashIndex& index);

} // namespace cgrx
