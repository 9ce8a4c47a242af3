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

#include <cgrx/cgrx_index.hpp>
#include <cgrx/experiment.hpp>
#include <cgrx/types.hpp>

#include <exception>
#include <iostream>
#include <span>
#include <vector>

#include <CLI11.hpp>

namespace cgrx::tools {

/// One CSV row per query: the number of matching rows and, with
/// `aggregate`, the wrapping sum of their row IDs.
inline void writeResultsCsv(std::ostream& out, std::span<const LookupResult> results,
                            bool aggregate) {
  out << "schema_version,query,count" << (aggregate ? ",aggregate" : "") << '\n';
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << kCsvSchemaVersion << ',' << i << ',' << results[i].count;
    if (aggregate) out << ',' << results[i].aggregate;
    out << '\n';
  }
}

inline LookupResult summarize(const std::vector<RowId>& rows) {
  LookupResult r;
  r.count = rows.size();
  for (RowId id : rows) r.aggregate += id;
  return r;
}

inline void addBackendOption(CLI::App* cmd, std::string& backend) {
  cmd->add_option("--backend", backend, "Ray-casting backend")
      ->check(CLI::IsMember({"grid", "bvh"}))
      ->capture_default_str();
}

inline void addMappingOption(CLI::App* cmd, std::string& mapping) {
  cmd->add_option("--mapping", mapping, "Key mapping preset")
      ->check(CLI::IsMember({"simple", "default-unscaled", "default-scaled"}))
      ->capture_default_str();
}

/// Runs the parsed command, mapping library errors to exit code 2.
template <class Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fatal: " << e.what() << '\n';
    return 3;
  }
}

} // namespace cgrx::tools
