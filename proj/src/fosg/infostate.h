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

#ifndef FOSG_INFOSTATE_H_
#define FOSG_INFOSTATE_H_

#include <string>
#include <string_view>
#include <vector>

namespace fosg {

// Information and public state keys are flat strings of elements:
//   O(priv,pub)  an observation pair
//   A(action)    an own action
//   P(pub)       a public observation
// Symbols are backslash-escaped so a key is a prefix of another exactly when
// the corresponding element sequence is.

std::string EscapeSymbol(std::string_view symbol);

std::string ObservationElement(std::string_view priv, std::string_view pub);
std::string ActionElement(std::string_view action);
std::string PublicElement(std::string_view pub);

struct KeyElement {
  char kind = 'O';  // 'O', 'A' or 'P'.
  std::vector<std::string> fields;

  bool operator==(const KeyElement&) const = default;
};

// Throws ErrorCode::kParseError on malformed keys.
std::vector<KeyElement> DecodeKey(std::string_view key);
std::string EncodeKey(const std::vector<KeyElement>& elements);

bool KeyExtends(std::string_view key, std::string_view prefix);

// Packs an observation pair into one symbol, used when the public part is
// moved into the private channel.
std::string PackPair(std::string_view priv, std::string_view pub);
// Returns false when `symbol` is not a packed pair.
bool UnpackPair(std::string_view symbol, std::string* priv, std::string* pub);

}  // namespace fosg

#endif  // FOSG_INFOSTATE_H_
