// Copyright 2026 The superzeno Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// INI-style scenario files.
//
//   [system]            ; optional, applies to every scenario
//   j12 = 7.17
//
//   [singlet]           ; one section per scenario run
//   scenario = singlet
//   n_cycles = 10
//
// Comments start with ';' or '#'. Scenario sections accept every [system] key
// as a local override.

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "superzeno/experiment.hpp"

namespace superzeno {

struct IniEntry {
  std::string key;
  std::string value;
  int line;
};

struct IniSection {
  std::string name;
  int line;
  std::vector<IniEntry> entries;
};

// Throws ConfigFileError with the offending line.
std::vector<IniSection> parse_ini(std::istream& in, const std::string& source);

std::vector<ScenarioConfig> load_scenarios(std::istream& in, const std::string& source);
std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path);

}  // namespace superzeno
