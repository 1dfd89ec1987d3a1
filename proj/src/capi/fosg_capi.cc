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

#include "fosg/fosg.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "fosg/commands.h"
#include "fosg/dot_export.h"
#include "fosg/game_json.h"
#include "fosg/status.h"

struct fosg_game {
  fosg::GameSpec spec;
};

struct fosg_efg {
  fosg::ClassicalEFG efg;
  std::optional<fosg::Timing> timing;
};

namespace {

thread_local std::string last_error;

fosg_status Status(fosg::ErrorCode code) {
  return static_cast<fosg_status>(static_cast<int>(code));
}

char* Copy(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

template <typename F>
fosg_status Guard(F&& body) {
  try {
    last_error.clear();
    body();
    return FOSG_OK;
  } catch (const fosg::FosgError& e) {
    last_error = e.what();
    return Status(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return FOSG_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FOSG_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FOSG_INTERNAL;
  }
}

void Require(bool ok, const char* what) {
  if (!ok) fosg::Fail(fosg::ErrorCode::kInvalidArgument, what);
}

}  // namespace

extern "C" {

const char* fosg_version(void) { return "0.1.0"; }

const char* fosg_status_name(fosg_status status) {
  // The names are string literals, so the view is NUL-terminated.
  return fosg::ErrorCodeName(static_cast<fosg::ErrorCode>(status)).data();
}

const char* fosg_last_error(void) { return last_error.c_str(); }

void fosg_string_free(char* s) { std::free(s); }

int fosg_source_is_efg(const char* source) {
  if (source == nullptr) return 0;
  try {
    return fosg::IsEfgSource(source) ? 1 : 0;
  } catch (...) {
    return 0;
  }
}

fosg_status fosg_game_load(const char* source, uint64_t seed, fosg_game** out) {
  return Guard([&] {
    Require(source != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new fosg_game{fosg::LoadGame(source, seed)};
  });
}

fosg_status fosg_game_from_json(const char* text, fosg_game** out) {
  return Guard([&] {
    Require(text != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new fosg_game{fosg::GameSpecFromJsonText(text)};
  });
}

fosg_status fosg_game_from_efg(const fosg_efg* efg, fosg_game** out) {
  return Guard([&] {
    Require(efg != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new fosg_game{fosg::GameForEfg(efg->efg)};
  });
}

void fosg_game_free(fosg_game* game) { delete game; }

fosg_status fosg_game_to_json(const fosg_game* game, char** json) {
  return Guard([&] {
    Require(game != nullptr && json != nullptr, "null argument");
    *json = Copy(fosg::GameSpecToJson(game->spec).dump(2));
  });
}

fosg_status fosg_game_validate(const fosg_game* game, char** report) {
  bool ok = true;
  const fosg_status status = Guard([&] {
    Require(game != nullptr && report != nullptr, "null argument");
    const fosg::ValidationReport r = fosg::Validate(game->spec);
    ok = r.ok();
    if (!ok) last_error = r.violations.front().kind + ": " + r.violations.front().message;
    *report = Copy(fosg::ValidationJson(r).dump(2));
  });
  if (status != FOSG_OK) return status;
  return ok ? FOSG_OK : FOSG_VALIDATION;
}

fosg_status fosg_game_inspect(const fosg_game* game, char** report) {
  return Guard([&] {
    Require(game != nullptr && report != nullptr, "null argument");
    *report = Copy(fosg::InspectGame(game->spec).dump(2));
  });
}

fosg_status fosg_game_solve(const fosg_game* game, const char* options,
                            char** result, char** trace_csv) {
  return Guard([&] {
    Require(game != nullptr && result != nullptr, "null argument");
    const nlohmann::json doc = options != nullptr && *options != '\0'
                                   ? nlohmann::json::parse(options)
                                   : nlohmann::json::object();
    const fosg::SolveOutput out =
        fosg::SolveGame(game->spec, fosg::SolveOptionsFromJson(doc));
    *result = Copy(out.result.dump(2));
    if (trace_csv != nullptr) *trace_csv = Copy(out.trace_csv);
  });
}

fosg_status fosg_game_export_dot(const fosg_game* game, const char* view,
                                 char** dot) {
  return Guard([&] {
    Require(game != nullptr && view != nullptr && dot != nullptr,
            "null argument");
    *dot = Copy(fosg::ExportDot(fosg::RepForGame(game->spec), view));
  });
}

fosg_status fosg_game_lp_dump(const fosg_game* game, char** lp) {
  return Guard([&] {
    Require(game != nullptr && lp != nullptr, "null argument");
    *lp = Copy(fosg::LpDumpForGame(game->spec));
  });
}

fosg_status fosg_efg_load(const char* source, uint64_t seed, fosg_efg** out) {
  return Guard([&] {
    Require(source != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto* efg = new fosg_efg;
    try {
      efg->efg = fosg::LoadEfg(source, seed, &efg->timing);
    } catch (...) {
      delete efg;
      throw;
    }
    *out = efg;
  });
}

fosg_status fosg_efg_from_json(const char* text, fosg_efg** out) {
  return Guard([&] {
    Require(text != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new fosg_efg{fosg::EfgFromJsonText(text), std::nullopt};
  });
}

fosg_status fosg_efg_from_game(const fosg_game* game, fosg_efg** out) {
  return Guard([&] {
    Require(game != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    *out = new fosg_efg{fosg::ForgetNonActing(fosg::RepForGame(game->spec)),
                        std::nullopt};
  });
}

void fosg_efg_free(fosg_efg* efg) { delete efg; }

fosg_status fosg_efg_to_json(const fosg_efg* efg, char** json) {
  return Guard([&] {
    Require(efg != nullptr && json != nullptr, "null argument");
    *json = Copy(fosg::EfgToJson(efg->efg).dump(2));
  });
}

fosg_status fosg_efg_inspect(const fosg_efg* efg, char** report) {
  return Guard([&] {
    Require(efg != nullptr && report != nullptr, "null argument");
    *report = Copy(fosg::InspectEfg(efg->efg).dump(2));
  });
}

fosg_status fosg_efg_timing_check(const fosg_efg* efg, char** report) {
  return Guard([&] {
    Require(efg != nullptr && report != nullptr, "null argument");
    *report = Copy(fosg::TimingCheck(efg->efg).dump(2));
  });
}

fosg_status fosg_efg_pad(const fosg_efg* efg, const char* timing,
                         fosg_efg** padded, char** report) {
  return Guard([&] {
    Require(efg != nullptr && padded != nullptr, "null argument");
    *padded = nullptr;
    std::optional<fosg::Timing> used = efg->timing;
    if (timing != nullptr) {
      used = fosg::TimingFromJson(nlohmann::json::parse(timing));
    }
    fosg::PadOutput out = fosg::PadEfg(efg->efg, used);
    auto* result = new fosg_efg{std::move(out.padded), std::nullopt};
    if (report != nullptr) {
      try {
        *report = Copy(out.report.dump(2));
      } catch (...) {
        delete result;
        throw;
      }
    }
    *padded = result;
  });
}

fosg_status fosg_efg_export_dot(const fosg_efg* efg, char** dot) {
  return Guard([&] {
    Require(efg != nullptr && dot != nullptr, "null argument");
    *dot = Copy(fosg::EfgDot(efg->efg));
  });
}

}  // extern "C"
