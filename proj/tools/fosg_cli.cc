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

// Command-line front end. Everything goes through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fosg/fosg.h"
#include "json.hpp"

namespace {

enum Exit { kSuccess = 0, kFailure = 1, kValidation = 2, kPrecondition = 3, kTiming = 4 };

enum class Level { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

Level LogLevel() {
  const char* env = std::getenv("FOSG_LOG");
  const std::string v = env == nullptr ? "" : env;
  if (v == "error") return Level::kError;
  if (v == "info") return Level::kInfo;
  if (v == "debug") return Level::kDebug;
  return Level::kWarn;
}

void Log(Level level, const std::string& message) {
  static const Level threshold = LogLevel();
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level > threshold) return;
  std::cerr << "fosg: " << names[static_cast<int>(level)] << ": " << message << "\n";
}

int ExitFor(fosg_status status) {
  switch (status) {
    case FOSG_OK:
      return kSuccess;
    case FOSG_INVALID_ARGUMENT:
    case FOSG_PARSE_ERROR:
    case FOSG_VALIDATION:
    case FOSG_MISSING_CHANCE_POLICY:
    case FOSG_NOT_SERIAL:
    case FOSG_DEPTH_EXCEEDED:
    case FOSG_INVALID_TIMING:
    case FOSG_IO:
      return kValidation;
    case FOSG_NOT_TIMEABLE:
      return kTiming;
    case FOSG_INTERNAL:
      return kFailure;
    default:
      return kPrecondition;
  }
}

// Thrown to unwind with a status after reporting it.
struct ApiFailure {
  fosg_status status;
};

void Check(fosg_status status) {
  if (status == FOSG_OK) return;
  Log(Level::kError, std::string(fosg_status_name(status)) + ": " + fosg_last_error());
  throw ApiFailure{status};
}

// Owns a string returned by the library.
class Text {
 public:
  Text() = default;
  ~Text() { fosg_string_free(p_); }
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  char** out() { return &p_; }
  std::string str() const { return p_ == nullptr ? std::string() : std::string(p_); }

 private:
  char* p_ = nullptr;
};

struct GameHandle {
  fosg_game* p = nullptr;
  ~GameHandle() { fosg_game_free(p); }
};

struct EfgHandle {
  fosg_efg* p = nullptr;
  ~EfgHandle() { fosg_efg_free(p); }
};

void Emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    if (!contents.empty() && contents.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) {
    Log(Level::kError, "cannot write '" + path + "'");
    throw ApiFailure{FOSG_IO};
  }
  Log(Level::kInfo, "wrote " + path);
}

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    Log(Level::kError, "cannot read '" + path + "'");
    throw ApiFailure{FOSG_IO};
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void LoadGame(const std::string& source, uint64_t seed, GameHandle* game) {
  if (fosg_source_is_efg(source.c_str())) {
    EfgHandle efg;
    Check(fosg_efg_load(source.c_str(), seed, &efg.p));
    Check(fosg_game_from_efg(efg.p, &game->p));
    return;
  }
  Check(fosg_game_load(source.c_str(), seed, &game->p));
}

void LoadEfg(const std::string& source, uint64_t seed, EfgHandle* efg) {
  if (fosg_source_is_efg(source.c_str())) {
    Check(fosg_efg_load(source.c_str(), seed, &efg->p));
    return;
  }
  GameHandle game;
  Check(fosg_game_load(source.c_str(), seed, &game.p));
  Check(fosg_efg_from_game(game.p, &efg->p));
}

struct Config {
  std::string game;
  uint64_t seed = 0;
  std::string out;
  // solve
  std::string method;
  int iters = 1000;
  std::string mode = "simultaneous";
  std::string trace = "trace.csv";
  bool no_trace = false;
  int trace_stride = 0;
  int trunk_depth = 0;
  std::string trunk_file;
  int subgame_iters = 1000;
  bool parallel_leaves = false;
  bool wall_clock = false;
  // timing
  std::string timing_file;
  std::string report;
  // export
  std::string view = "history";
  std::string format = "dot";
  std::string lp_dump;
};

int Inspect(const Config& c) {
  Text report;
  if (fosg_source_is_efg(c.game.c_str())) {
    EfgHandle efg;
    Check(fosg_efg_load(c.game.c_str(), c.seed, &efg.p));
    Check(fosg_efg_inspect(efg.p, report.out()));
  } else {
    GameHandle game;
    Check(fosg_game_load(c.game.c_str(), c.seed, &game.p));
    Check(fosg_game_inspect(game.p, report.out()));
  }
  Emit(c.out, report.str());
  return kSuccess;
}

int Solve(const Config& c) {
  nlohmann::json options = {{"method", c.method},
                            {"iterations", c.iters},
                            {"mode", c.mode},
                            {"trace_stride", c.trace_stride},
                            {"subgame_budget", c.subgame_iters},
                            {"parallel_leaves", c.parallel_leaves},
                            {"wall_clock", c.wall_clock},
                            {"seed", c.seed}};
  if (c.trunk_depth > 0) options["trunk_depth"] = c.trunk_depth;
  if (!c.trunk_file.empty()) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(Slurp(c.trunk_file));
      if (doc.is_object()) doc = doc.at("public_states");
      options["trunk_keys"] = doc.get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      Log(Level::kError, std::string("bad trunk file: ") + e.what());
      throw ApiFailure{FOSG_PARSE_ERROR};
    }
  }
  GameHandle game;
  LoadGame(c.game, c.seed, &game);
  Log(Level::kInfo, "solving " + c.game + " with " + c.method);
  Text result, trace;
  Check(fosg_game_solve(game.p, options.dump().c_str(), result.out(), trace.out()));
  if (!c.no_trace && !c.trace.empty()) Emit(c.trace, trace.str());
  Emit(c.out, result.str());
  return kSuccess;
}

int TimingCheck(const Config& c) {
  EfgHandle efg;
  LoadEfg(c.game, c.seed, &efg);
  Text report;
  Check(fosg_efg_timing_check(efg.p, report.out()));
  Emit(c.out, report.str());
  return kSuccess;
}

int TimingPad(const Config& c) {
  EfgHandle efg;
  LoadEfg(c.game, c.seed, &efg);
  std::string timing;
  if (!c.timing_file.empty()) timing = Slurp(c.timing_file);
  EfgHandle padded;
  Text report, json;
  Check(fosg_efg_pad(efg.p, c.timing_file.empty() ? nullptr : timing.c_str(),
                     &padded.p, report.out()));
  Check(fosg_efg_to_json(padded.p, json.out()));
  if (!c.out.empty()) Emit(c.out, json.str());
  Emit(c.report, report.str());
  return kSuccess;
}

int Export(const Config& c) {
  Text text;
  if (fosg_source_is_efg(c.game.c_str())) {
    EfgHandle efg;
    Check(fosg_efg_load(c.game.c_str(), c.seed, &efg.p));
    if (c.format == "json") {
      Check(fosg_efg_to_json(efg.p, text.out()));
    } else if (c.view == "history") {
      Check(fosg_efg_export_dot(efg.p, text.out()));
    } else {
      GameHandle game;
      Check(fosg_game_from_efg(efg.p, &game.p));
      Check(fosg_game_export_dot(game.p, c.view.c_str(), text.out()));
    }
    Emit(c.out, text.str());
    if (!c.lp_dump.empty()) {
      GameHandle game;
      Check(fosg_game_from_efg(efg.p, &game.p));
      Text lp;
      Check(fosg_game_lp_dump(game.p, lp.out()));
      Emit(c.lp_dump, lp.str());
    }
    return kSuccess;
  }
  GameHandle game;
  Check(fosg_game_load(c.game.c_str(), c.seed, &game.p));
  if (c.format == "json") {
    Check(fosg_game_to_json(game.p, text.out()));
  } else {
    Check(fosg_game_export_dot(game.p, c.view.c_str(), text.out()));
  }
  Emit(c.out, text.str());
  if (!c.lp_dump.empty()) {
    Text lp;
    Check(fosg_game_lp_dump(game.p, lp.out()));
    Emit(c.lp_dump, lp.str());
  }
  return kSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factored-observation stochastic game toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fosg_version());
  Config c;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--game", c.game, "built-in name or JSON file")->required();
    sub->add_option("--seed", c.seed, "seed for random games")->default_val(0);
  };

  CLI::App* inspect = app.add_subcommand("inspect", "print counts and checks as JSON");
  common(inspect);
  inspect->add_option("--out", c.out, "report file (default stdout)");

  CLI::App* solve = app.add_subcommand("solve", "run a solver");
  solve->add_option("method", c.method, "cfr, lp or cfrd")
      ->required()
      ->check(CLI::IsMember({"cfr", "lp", "cfrd"}));
  common(solve);
  solve->add_option("--iters", c.iters, "iterations")->check(CLI::PositiveNumber);
  solve->add_option("--mode", c.mode, "update mode")
      ->check(CLI::IsMember({"simultaneous", "alternating"}));
  solve->add_option("--out", c.out, "result JSON file (default stdout)");
  auto* trace_opt = solve->add_option("--trace", c.trace, "trace CSV file");
  solve->add_flag("--no-trace", c.no_trace, "do not write a trace file")->excludes(trace_opt);
  solve->add_option("--trace-stride", c.trace_stride, "iterations between trace rows")
      ->check(CLI::NonNegativeNumber);
  auto* depth = solve->add_option("--trunk-depth", c.trunk_depth, "public-tree depth of the trunk")
                    ->check(CLI::PositiveNumber);
  solve->add_option("--trunk-file", c.trunk_file, "JSON list of trunk public states")
      ->excludes(depth);
  solve->add_option("--subgame-iters", c.subgame_iters, "CFR iterations per subgame solve")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--parallel-leaves", c.parallel_leaves, "solve leaf subgames concurrently");
  solve->add_flag("--wall-clock", c.wall_clock, "record wall-clock time in the trace");

  CLI::App* timing = app.add_subcommand("timing", "timeability tools");
  timing->require_subcommand(1);
  CLI::App* check = timing->add_subcommand("check", "exact timing or a witness cycle");
  common(check);
  check->add_option("--out", c.out, "report file (default stdout)");
  CLI::App* pad = timing->add_subcommand("pad", "pad to a 1-timeable EFG");
  common(pad);
  pad->add_option("--timing", c.timing_file, "JSON timing labels");
  pad->add_option("--out", c.out, "padded EFG JSON file");
  pad->add_option("--report", c.report, "size report file (default stdout)");

  CLI::App* exp = app.add_subcommand("export", "write DOT, JSON or an LP listing");
  common(exp);
  exp->add_option("--view", c.view, "history, infoset:<player> or public");
  exp->add_option("--format", c.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  exp->add_option("--out", c.out, "output file (default stdout)");
  exp->add_option("--lp-dump", c.lp_dump, "also write the sequence-form LP");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kValidation;
  }
  try {
    if (*inspect) return Inspect(c);
    if (*solve) return Solve(c);
    if (*check) return TimingCheck(c);
    if (*pad) return TimingPad(c);
    if (*exp) return Export(c);
  } catch (const ApiFailure& f) {
    return ExitFor(f.status);
  }
  return kFailure;
}
