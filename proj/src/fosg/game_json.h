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

#ifndef FOSG_GAME_JSON_H_
#define FOSG_GAME_JSON_H_

#include <string>

#include "fosg/game_spec.h"
#include "json.hpp"

namespace fosg {

// Tabular JSON game format. Players are numbered from 1 in the file.
// Throws ErrorCode::kParseError for malformed documents and
// ErrorCode::kValidation for references to undeclared entities or
// distributions whose mass is outside [1 - 1e-9, 1 + 1e-9].
GameSpec GameSpecFromJson(const nlohmann::json& doc);
GameSpec GameSpecFromJsonText(const std::string& text);
nlohmann::json GameSpecToJson(const GameSpec& spec);

}  // namespace fosg

#endif  // FOSG_GAME_JSON_H_
