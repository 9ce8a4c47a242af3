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

#include "cgrx/keymap.hpp"

#include <json.hpp>

namespace cgrx {

inline nlohmann::json mappingToJson(const KeyMapping& m) {
  return {{"name", mappingName(m)}, {"xBits", m.xBits},   {"yBits", m.yBits},
          {"zBits", m.zBits},       {"yScale", m.yScale}, {"zScale", m.zScale}};
}

inline KeyMapping mappingFromJson(const nlohmann::json& j) {
  if (j.is_string()) return KeyMapping::fromName(j.get<std::string>());
  KeyMapping m;
  m.xBits = j.at("xBits").get<unsigned>();
  m.yBits = j.at("yBits").get<unsigned>();
  m.zBits = j.at("zBits").get<unsigned>();
  m.yScale = j.at("yScale").get<std::uint64_t>();
  m.zScale = j.at("zScale").get<std::uint64_t>();
  m.validate();
  return m;
}

} // namespace cgrx
