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

/* C interface of the fosg shared library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every call returns a fosg_status; on failure fosg_last_error() describes
 * the problem for the calling thread. Strings returned through char** out
 * parameters are owned by the caller and released with fosg_string_free. */

#ifndef FOSG_FOSG_H_
#define FOSG_FOSG_H_

#include <stdint.h>

#if defined(_WIN32)
#define FOSG_API __declspec(dllexport)
#else
#define FOSG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fosg_status {
  FOSG_OK = 0,
  FOSG_INVALID_ARGUMENT = 1,
  FOSG_PARSE_ERROR = 2,
  FOSG_VALIDATION = 3,
  FOSG_STEP_AT_TERMINAL = 4,
  FOSG_ILLEGAL_ACTION = 5,
  FOSG_MISSING_CHANCE_POLICY = 6,
  FOSG_NOT_SERIAL = 7,
  FOSG_DEPTH_EXCEEDED = 8,
  FOSG_THICK_PUBLIC_SETS = 9,
  FOSG_IMPERFECT_RECALL = 10,
  FOSG_NOT_ONE_TIMEABLE = 11,
  FOSG_INVALID_TIMING = 12,
  FOSG_NOT_TIMEABLE = 13,
  FOSG_MISSING_POLICY = 14,
  FOSG_NOT_ZERO_SUM = 15,
  FOSG_UNKNOWN_PUBLIC_STATE = 16,
  FOSG_INCONSISTENT_PBS = 17,
  FOSG_INFEASIBLE = 18,
  FOSG_UNBOUNDED = 19,
  FOSG_INVALID_PLAN = 20,
  FOSG_IO = 21,
  FOSG_INTERNAL = 22
} fosg_status;

typedef struct fosg_game fosg_game;
typedef struct fosg_efg fosg_efg;

FOSG_API const char* fosg_version(void);
FOSG_API const char* fosg_status_name(fosg_status status);
/* Message of the last failed call on this thread, "" if none. */
FOSG_API const char* fosg_last_error(void);
FOSG_API void fosg_string_free(char* s);

/* 1 when `source` names a tabular EFG (built-in or JSON file), else 0. */
FOSG_API int fosg_source_is_efg(const char* source);

/* Games: built-in name, "random" (drawn from `seed`) or JSON file path. */
FOSG_API fosg_status fosg_game_load(const char* source, uint64_t seed,
                                    fosg_game** out);
FOSG_API fosg_status fosg_game_from_json(const char* text, fosg_game** out);
FOSG_API fosg_status fosg_game_from_efg(const fosg_efg* efg, fosg_game** out);
FOSG_API void fosg_game_free(fosg_game* game);
FOSG_API fosg_status fosg_game_to_json(const fosg_game* game, char** json);
/* Writes the report; returns FOSG_VALIDATION when there are violations. */
FOSG_API fosg_status fosg_game_validate(const fosg_game* game, char** report);
FOSG_API fosg_status fosg_game_inspect(const fosg_game* game, char** report);
/* `options` is a JSON object, see README; NULL means defaults. */
FOSG_API fosg_status fosg_game_solve(const fosg_game* game, const char* options,
                                     char** result, char** trace_csv);
/* view: "history", "infoset:<player>" or "public". */
FOSG_API fosg_status fosg_game_export_dot(const fosg_game* game,
                                          const char* view, char** dot);
FOSG_API fosg_status fosg_game_lp_dump(const fosg_game* game, char** lp);

/* Tabular EFGs: built-in name or JSON file path. */
FOSG_API fosg_status fosg_efg_load(const char* source, uint64_t seed,
                                   fosg_efg** out);
FOSG_API fosg_status fosg_efg_from_json(const char* text, fosg_efg** out);
/* Forgets the non-acting partitions of the unrolled game. */
FOSG_API fosg_status fosg_efg_from_game(const fosg_game* game, fosg_efg** out);
FOSG_API void fosg_efg_free(fosg_efg* efg);
FOSG_API fosg_status fosg_efg_to_json(const fosg_efg* efg, char** json);
FOSG_API fosg_status fosg_efg_inspect(const fosg_efg* efg, char** report);
FOSG_API fosg_status fosg_efg_timing_check(const fosg_efg* efg, char** report);
/* Pads to a 1-timeable EFG. `timing` is JSON labels or NULL for the fixture
 * timing, falling back to the exact timing. */
FOSG_API fosg_status fosg_efg_pad(const fosg_efg* efg, const char* timing,
                                  fosg_efg** padded, char** report);
FOSG_API fosg_status fosg_efg_export_dot(const fosg_efg* efg, char** dot);

#ifdef __cplusplus
}
#endif

#endif /* FOSG_FOSG_H_ */
