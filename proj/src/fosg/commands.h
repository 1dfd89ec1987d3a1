// Copyright 2026 The fosgkit Authors.
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

#ifndef FOSG_COMMANDS_H_
#define FOSG_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fosg/cfr.h"
#include "fosg/efg.h"
#include "fosg/game_spec.h"
#include "fosg/timeability.h"
#include "fosg/unroller.h"
#include "json.hpp"

namespace fosg {

// High-level operations shared by the C API and the command-line tool.

// True for built-in EFG names and JSON files holding a tabular EFG.
bool IsEfgSource(const std::string& source);

// Built-in name or JSON file. "random" draws a game from `seed`.
GameSpec LoadGame(const std::string& source, uint64_t seed = 0);
// As LoadGame for EFGs; `timing` receives the fixture timing if it has one.
ClassicalEFG LoadEfg(const std::string& source, uint64_t seed = 0,
                     std::optional<Timing>* timing = nullptr);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

// Unrolls the serialized game.
ExtensiveFormRep RepForGame(const GameSpec& spec);
// Game whose unrolled tree is the augmentation of a 1-timeable EFG.
GameSpec GameForEfg(const ClassicalEFG& efg);

nlohmann::json ValidationJson(const ValidationReport& report);
nlohmann::json InspectGame(const GameSpec& spec);
nlohmann::json InspectEfg(const ClassicalEFG& efg);

nlohmann::json PolicyJson(const ExtensiveFormRep& rep,
                          const TabularPolicy& policy);

struct SolveOptions {
  std::string method = "cfr";  // cfr, lp or cfrd.
  int iterations = 1000;
  UpdateMode mode = UpdateMode::kSimultaneous;
  int trace_stride = 0;  // 0 picks iterations / 100.
  int trunk_depth = 0;
  std::vector<std::string> trunk_keys;
  int subgame_budget = 1000;
  bool parallel_leaves = false;
  bool wall_clock = false;
  uint64_t seed = 0;
};

SolveOptions SolveOptionsFromJson(const nlohmann::json& doc);

struct SolveOutput {
  nlohmann::json result;
  std::string trace_csv;
};

SolveOutput SolveGame(const GameSpec& spec, const SolveOptions& options);

nlohmann::json TimingCheck(const ClassicalEFG& efg);

struct PadOutput {
  ClassicalEFG padded;
  nlohmann::json report;
};

// Uses `timing` when given, otherwise the exact timing. Raises kNotTimeable.
PadOutput PadEfg(const ClassicalEFG& efg, const std::optional<Timing>& timing);

Timing TimingFromJson(const nlohmann::json& doc);

// Standard-form LP listing of a two-player zero-sum game.
std::string LpDumpForGame(const GameSpec& spec);

}  // namespace fosg

#endif  // FOSG_COMMANDS_H_
