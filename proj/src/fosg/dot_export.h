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

#ifndef FOSG_DOT_EXPORT_H_
#define FOSG_DOT_EXPORT_H_

#include <string>

#include "fosg/efg.h"
#include "fosg/unroller.h"

namespace fosg {

std::string HistoryDot(const ExtensiveFormRep& rep);
// Tree of all infostates of `player` (0-based).
std::string InfosetDot(const ExtensiveFormRep& rep, int player);
std::string PublicDot(const ExtensiveFormRep& rep);
std::string EfgDot(const ClassicalEFG& efg);

// `view` is "history", "infoset:<player>" (1-based) or "public"; anything
// else raises kInvalidArgument.
std::string ExportDot(const ExtensiveFormRep& rep, const std::string& view);

}  // namespace fosg

#endif  // FOSG_DOT_EXPORT_H_
