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

#include "cgrx/footprint.hpp"

namespace cgrx {

namespace {

void finish(FootprintReport& r) {
  r.overheadPercent = r.representationBytes == 0
                          ? 0.0
                          : 100.0 * static_cast<double>(r.representationBytes - r.payloadKeyBytes) /
                                static_cast<double>(r.representationBytes);
}

} // namespace

FootprintReport computeFootprint(const CgrxIndex& index) {
  FootprintReport r;
  r.structure = "cgrx";
  r.keys = index.store().size();
  r.triangles = index.scene().triangleCount();
  r.triangleBytes = kTriangleBytes * r.triangles;
  r.vertexBufferBytes = kTriangleBytes * index.scene().size();
  r.entryBytes = kEntryBytes * r.keys;
  r.emulatorBvhBytes = index.caster().memoryBytes();
  r.payloadKeyBytes = kKeyBytes * r.keys;
  r.representationBytes = r.payloadKeyBytes + r.triangleBytes;
  r.totalBytes = r.entryBytes + r.vertexBufferBytes;
  finish(r);
  return r;
}

FootprintReport computeFootprint(const CgrxuIndex& index) {
  FootprintReport r;
  r.structure = "cgrxu";
  r.keys = index.size();
  r.triangles = index.scene().triangleCount();
  r.triangleBytes = kTriangleBytes * r.triangles;
  r.vertexBufferBytes = kTriangleBytes * index.scene().size();
  r.nodeBytes = index.nodeBytes();
  r.emulatorBvhBytes = index.caster().memoryBytes();
  r.payloadKeyBytes = kKeyBytes * r.keys;
  // Node slots minus the row IDs they hold.
  const std::uint64_t nodes = index.nodeBytes() / nodeFootprint(index.nodeCapacity());
  r.representationBytes = r.nodeBytes - nodes * index.nodeCapacity() * 8 + r.triangleBytes;
  r.totalBytes = r.nodeBytes + r.vertexBufferBytes;
  finish(r);
  return r;
}

FootprintReport computeFootprint(const RxEmulated& index) {
  FootprintReport r;
  r.structure = "rx";
  r.keys = index.keys();
  r.triangles = index.triangleCount();
  r.triangleBytes = kTriangleBytes * r.triangles;
  r.vertexBufferBytes = kTriangleBytes * index.scene().size();
  r.emulatorBvhBytes = index.caster().memoryBytes();
  r.payloadKeyBytes = kKeyBytes * r.keys;
  r.representationBytes = r.triangleBytes;
  r.totalBytes = r.vertexBufferBytes;
  finish(r);
  return r;
}

FootprintReport computeFootprint(const SortedArrayIndex& index) {
  FootprintReport r;
  r.structure = "sa";
  r.keys = index.size();
  r.entryBytes = kEntryBytes * r.keys;
  r.payloadKeyBytes = kKeyBytes * r.keys;
  r.representationBytes = r.payloadKeyBytes;
  r.totalBytes = r.entryBytes;
  finish(r);
  return r;
}

FootprintReport computeFootprint(const HashIndex& index) {
  FootprintReport r;
  r.structure = "ht";
  r.keys = index.size();
  r.entryBytes = index.memoryBytes();
  r.payloadKeyBytes = kKeyBytes * r.keys;
  r.representationBytes = r.entryBytes - 8 * r.keys;
  r.totalBytes = r.entryBytes;
  finish(r);
  return r;
}

} // namespace cgrx
