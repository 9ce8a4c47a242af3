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

#include "cgrx/cgrx_index.hpp"
#include "cgrx/cgrxu_index.hpp"
#include "cgrx/scene.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>

namespace cgrx {

/// Slot buffer as binary: slot count, bucket count, layout flags, then one
/// record per present slot.
void writeScene(std::ostream& out, const SceneBuffer& scene);
SceneBuffer readScene(std::istream& in);

/// Index file: a JSON header line followed by the sorted pairs. Loading
/// rebuilds the scene from the pairs; `backend` overrides the stored one.
void saveIndex(const std::filesystem::path& path, const CgrxIndex& index);
CgrxIndex loadIndex(const std::filesystem::path& path, std::optional<Backend> backend = {});

/// cgRXu state file. The scene is stored as built, so loading never
/// reconstructs it; only the acceleration structure is recreated.
void saveState(const std::filesystem::path& path, const CgrxuIndex& index);
CgrxuIndex loadState(const std::filesystem::path& path);

} // namespace cgrx
