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

#include "fosg/infostate.h"

#include "fosg/status.h"

namespace fosg {
namespace {

bool IsSpecial(char c) {
  return c == '\\' || c == '(' || c == ')' || c == ',';
}

// Splits the body of "(a,b,...)" starting at `pos` (which points at '(').
// Advances `pos` past the closing parenthesis.
std::vector<std::string> ReadFields(std::string_view text, size_t* pos) {
  std::vector<std::string> fields(1);
  size_t i = *pos + 1;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\\') {
      if (i + 1 >= text.size()) break;
      fields.back().push_back(text[i + 1]);
      i += 2;
    } else if (c == ',') {
      fields.emplace_back();
      ++i;
    } else if (c == ')') {
      *pos = i + 1;
      return fields;
    } else if (c == '(') {
      break;
    } else {
      fields.back().push_back(c);
      ++i;
    }
  }
  Fail(ErrorCode::kParseError, "malformed state key '" + std::string(text) +
                                   "'");
}

}  // namespace

std::string EscapeSymbol(std::string_view symbol) {
  std::string out;
  out.reserve(symbol.size());
  for (char c : symbol) {
    if (IsSpecial(c)) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string ObservationElement(std::string_view priv, std::string_view pub) {
  return "O(" + EscapeSymbol(priv) + "," + EscapeSymbol(pub) + ")";
}

std::string ActionElement(std::string_view action) {
  return "A(" + EscapeSymbol(action) + ")";
}

std::string PublicElement(std::string_view pub) {
  return "P(" + EscapeSymbol(pub) + ")";
}

std::vector<KeyElement> DecodeKey(std::string_view key) {
  std::vector<KeyElement> out;
  size_t pos = 0;
  while (pos < key.size()) {
    const char kind = key[pos];
    if ((kind != 'O' && kind != 'A' && kind != 'P') || pos + 1 >= key.size() ||
        key[pos + 1] != '(') {
      Fail(ErrorCode::kParseError,
           "malformed state key '" + std::string(key) + "'");
    }
    ++pos;
    KeyElement element{kind, ReadFields(key, &pos)};
    const size_t expected = kind == 'O' ? 2 : 1;
    if (element.fields.size() != expected) {
      Fail(ErrorCode::kParseError,
           "malformed state key '" + std::string(key) + "'");
    }
    out.push_back(std::move(element));
  }
  return out;
}

std::string EncodeKey(const std::vector<KeyElement>& elements) {
  std::string out;
  for (const KeyElement& e : elements) {
    out.push_back(e.kind);
    out.push_back('(');
    for (size_t i = 0; i < e.fields.size(); ++i) {
      if (i > 0) out.push_back(',');
      out += EscapeSymbol(e.fields[i]);
    }
    out.push_back(')');
  }
  return out;
}

bool KeyExtends(std::string_view key, std::string_view prefix) {
  // Every element ends with an unescaped ')', so a raw string prefix always
  // ends on an element boundary.
  return key.substr(0, prefix.size()) == prefix;
}

std::string PackPair(std::string_view priv, std::string_view pub) {
  return "(" + EscapeSymbol(priv) + "," + EscapeSymbol(pub) + ")";
}

bool UnpackPair(std::string_view symbol, std::string* priv, std::string* pub) {
  if (symbol.empty() || symbol.front() != '(') return false;
  size_t pos = 0;
  std::vector<std::string> fields;
  try {
    fields = ReadFields(symbol, &pos);
  } catch (const FosgError&) {
    return false;
  }
  if (pos != symbol.size() || fields.size() != 2) return false;
  *priv = fields[0];
  *pub = fields[1];
  return true;
}

}  // namespace fosg
