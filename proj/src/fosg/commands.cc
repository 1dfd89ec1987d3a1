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

#include "fosg/commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fosg/decomposition.h"
#include "fosg/domains.h"
#include "fosg/game_json.h"
#include "fosg/sequence_form.h"
#include "fosg/status.h"

namespace fosg {
namespace {

using nlohmann::json;

bool LooksLikePath(const std::string& source) {
  return source.find('/') != std::string::npos ||
         (source.size() > 5 && source.ends_with(".json"));
}

std::string Number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool IsZeroSum(const ExtensiveFormRep& rep) {
  try {
    RequireZeroSum(rep);
    return true;
  } catch (const FosgError&) {
    return false;
  }
}

bool ObservableRewards(const ExtensiveFormRep& rep) {
  for (int p = 0; p < rep.num_players; ++p) {
    for (const Infoset& info : rep.infosets[p]) {
      const double r = rep.nodes[info.nodes.front()].cumulative_reward[p];
      for (int h : info.nodes) {
        if (std::abs(rep.nodes[h].cumulative_reward[p] - r) > 1e-12) {
          return false;
        }
      }
    }
  }
  return true;
}

class Trace {
 public:
  explicit Trace(bool wall_clock)
      : wall_clock_(wall_clock), start_(std::chrono::steady_clock::now()) {
    out_ << "iteration,exploitability,value_p1,wall_ms\n";
  }

  void Row(int iteration, double exploitability, double value,
           double wall_ms = -1.0) {
    if (wall_ms < 0) {
      const std::chrono::duration<double, std::milli> elapsed =
          std::chrono::steady_clock::now() - start_;
      wall_ms = elapsed.count();
    }
    out_ << iteration << "," << Number(exploitability) << "," << Number(value)
         << "," << (wall_clock_ ? Number(wall_ms) : "0") << "\n";
  }

  std::string str() const { return out_.str(); }

 private:
  bool wall_clock_;
  std::chrono::steady_clock::time_point start_;
  std::ostringstream out_;
};

json NullableNumber(double v) {
  return std::isfinite(v) ? json(v) : json(nullptr);
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) Fail(ErrorCode::kIo, "cannot write '" + path + "'");
}

bool IsEfgSource(const std::string& source) {
  if (IsBuiltinEfgName(source) || source == "random_efg" ||
      source == "random_timeable") {
    return true;
  }
  if (!LooksLikePath(source)) return false;
  try {
    const json doc = json::parse(ReadFile(source));
    return doc.is_object() && doc.contains("nodes");
  } catch (const std::exception&) {
    return false;
  }
}

GameSpec LoadGame(const std::string& source, uint64_t seed) {
  if (source == "random") return RandomFosg(seed);
  if (!LooksLikePath(source)) return BuiltinGame(source);
  const std::string text = ReadFile(source);
  if (IsEfgSource(source)) {
    Fail(ErrorCode::kInvalidArgument,
         "'" + source + "' holds a tabular EFG, not a game spec");
  }
  return GameSpecFromJsonText(text);
}

ClassicalEFG LoadEfg(const std::string& source, uint64_t seed,
                     std::optional<Timing>* timing) {
  if (timing != nullptr) timing->reset();
  if (source == "random_efg") return RandomOneTimeableEfg(seed);
  if (source == "random_timeable") return RandomTimeableEfg(seed);
  if (source.rfind("padding_chain:", 0) == 0 && timing != nullptr) {
    int n = 0;
    try {
      n = std::stoi(source.substr(14));
    } catch (const std::logic_error&) {
      Fail(ErrorCode::kInvalidArgument, "unknown built-in EFG '" + source + "'");
    }
    PaddingChain chain = MakePaddingChain(n);
    *timing = chain.timing;
    return chain.efg;
  }
  if (!LooksLikePath(source)) return BuiltinEfg(source);
  return EfgFromJsonText(ReadFile(source));
}

ExtensiveFormRep RepForGame(const GameSpec& spec) {
  return Unroll(Serialize(spec));
}

GameSpec GameForEfg(const ClassicalEFG& efg) {
  return LiftToFosg(AugmentClassical(efg));
}

json ValidationJson(const ValidationReport& report) {
  json out;
  out["ok"] = report.ok();
  out["violations"] = json::array();
  for (const Violation& v : report.violations) {
    out["violations"].push_back(
        {{"kind", v.kind}, {"message", v.message}, {"state", v.state}});
  }
  return out;
}

json InspectGame(const GameSpec& spec) {
  const ValidationReport report = Validate(spec);
  if (!report.ok()) {
    const Violation& v = report.violations.front();
    Fail(ErrorCode::kValidation, v.kind + ": " + v.message);
  }
  const ExtensiveFormRep rep = RepForGame(spec);
  json out;
  out["schema"] = 1;
  out["kind"] = "fosg";
  out["players"] = rep.num_players;
  out["chance_player"] =
      spec.chance_player ? json(*spec.chance_player + 1) : json(nullptr);
  out["states"] = spec.states.size();
  out["serial"] = IsSerial(spec);
  out["histories"] = rep.nodes.size();
  out["terminals"] = rep.terminals.size();
  json acting = json::array(), all = json::array();
  for (int p = 0; p < rep.num_players; ++p) {
    acting.push_back(std::count_if(rep.infosets[p].begin(), rep.infosets[p].end(),
                                   [](const Infoset& s) { return s.acting; }));
    all.push_back(rep.infosets[p].size());
  }
  out["infosets"] = acting;
  out["infostates"] = all;
  out["public_states"] = rep.public_sets.size();
  const RecallCheck recall = CheckPerfectRecall(rep);
  out["perfect_recall"] = recall.perfect_recall;
  const ThickCheck thick = CheckThickPublicSets(rep);
  out["thick_public_sets"] = thick.thick;
  out["zero_sum"] = IsZeroSum(rep);
  out["observable_rewards"] = ObservableRewards(rep);
  return out;
}

json InspectEfg(const ClassicalEFG& efg) {
  ValidateEfg(efg);
  json out;
  out["schema"] = 1;
  out["kind"] = "efg";
  out["players"] = efg.num_players;
  out["nodes"] = efg.nodes.size();
  out["terminals"] = efg.Terminals().size();
  json counts = json::array();
  for (const auto& sets : efg.infosets) counts.push_back(sets.size());
  out["infosets"] = counts;
  out["perfect_recall"] = CheckPerfectRecall(efg).perfect_recall;
  out["one_timeable"] = IsOneTimeable(efg);
  out["timeable"] = FindExactTiming(efg).timeable;
  return out;
}

json PolicyJson(const ExtensiveFormRep& rep, const TabularPolicy& policy) {
  json out = json::object();
  for (int p = 0; p < rep.num_players; ++p) {
    json player = json::object();
    for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
      const Infoset& info = rep.infosets[p][s];
      if (!info.acting || s >= policy[p].size() || policy[p][s].empty()) {
        continue;
      }
      json dist = json::object();
      for (size_t a = 0; a < info.actions.size(); ++a) {
        dist[info.actions[a]] = policy[p][s][a];
      }
      player[info.key] = dist;
    }
    out[std::to_string(p + 1)] = player;
  }
  return out;
}

SolveOptions SolveOptionsFromJson(const json& doc) {
  SolveOptions o;
  if (!doc.is_object()) {
    Fail(ErrorCode::kInvalidArgument, "solve options must be a JSON object");
  }
  try {
    o.method = doc.value("method", o.method);
    o.iterations = doc.value("iterations", o.iterations);
    const std::string mode = doc.value("mode", std::string("simultaneous"));
    if (mode == "simultaneous") {
      o.mode = UpdateMode::kSimultaneous;
    } else if (mode == "alternating") {
      o.mode = UpdateMode::kAlternating;
    } else {
      Fail(ErrorCode::kInvalidArgument, "unknown update mode '" + mode + "'");
    }
    o.trace_stride = doc.value("trace_stride", o.trace_stride);
    o.trunk_depth = doc.value("trunk_depth", o.trunk_depth);
    o.trunk_keys = doc.value("trunk_keys", o.trunk_keys);
    o.subgame_budget = doc.value("subgame_budget", o.subgame_budget);
    o.parallel_leaves = doc.value("parallel_leaves", o.parallel_leaves);
    o.wall_clock = doc.value("wall_clock", o.wall_clock);
    o.seed = doc.value("seed", o.seed);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidArgument, std::string("bad solve options: ") + e.what());
  }
  if (o.method != "cfr" && o.method != "lp" && o.method != "cfrd") {
    Fail(ErrorCode::kInvalidArgument, "unknown method '" + o.method + "'");
  }
  if (o.iterations < 1) Fail(ErrorCode::kInvalidArgument, "iterations must be >= 1");
  if (o.trace_stride < 0 || o.subgame_budget < 1 || o.trunk_depth < 0) {
    Fail(ErrorCode::kInvalidArgument, "solver parameters out of range");
  }
  return o;
}

SolveOutput SolveGame(const GameSpec& spec, const SolveOptions& options) {
  const ExtensiveFormRep rep = RepForGame(spec);
  const bool zero_sum = IsZeroSum(rep);
  const int stride = options.trace_stride > 0
                         ? options.trace_stride
                         : std::max(1, options.iterations / 100);
  Trace trace(options.wall_clock);
  json result;
  result["schema"] = 1;
  result["method"] = options.method;
  result["seed"] = options.seed;
  json meta;
  meta["mode"] = options.mode == UpdateMode::kSimultaneous ? "simultaneous"
                                                           : "alternating";
  meta["trace_stride"] = stride;
  meta["zero_reach_values"] = "member mean";
  if (options.method == "cfr") {
    CfrOptions cfr;
    cfr.mode = options.mode;
    CfrSolver solver(rep, cfr);
    TabularPolicy avg;
    double expl = NAN, value = 0.0;
    for (int t = 1; t <= options.iterations; ++t) {
      solver.Iterate();
      if (t % stride == 0 || t == options.iterations) {
        avg = solver.AveragePolicy();
        value = ExpectedUtility(rep, avg)[0];
        expl = zero_sum ? Exploitability(rep, avg) : NAN;
        trace.Row(t, expl, value);
      }
    }
    result["iterations"] = options.iterations;
    result["game_value"] = value;
    result["exploitability"] = NullableNumber(expl);
    result["policy"] = PolicyJson(rep, avg);
  } else if (options.method == "lp") {
    RequireZeroSum(rep);
    const SequenceLp lp = BuildSequenceLp(rep);
    const LpSolution sol = SolveZeroSumLp(lp);
    bool uniform = false;
    const TabularPolicy profile = ProfileFromPlans(rep, lp, sol.x, sol.y, &uniform);
    const double expl = Exploitability(rep, profile);
    trace.Row(1, expl, sol.value);
    result["iterations"] = 1;
    result["game_value"] = sol.value;
    result["exploitability"] = expl;
    result["policy"] = PolicyJson(rep, profile);
    meta["pivots"] = sol.pivots.size();
    meta["sequences"] = {lp.first.Size(), lp.second.Size()};
    meta["zero_mass_uniform"] = uniform;
  } else {
    RequireZeroSum(rep);
    const GameSpec serial = Serialize(spec);
    Trunk trunk;
    if (!options.trunk_keys.empty()) {
      trunk = TrunkFromKeys(rep, options.trunk_keys);
      meta["trunk_keys"] = options.trunk_keys;
    } else if (options.trunk_depth > 0) {
      trunk = TrunkByDepth(rep, options.trunk_depth);
      meta["trunk_depth"] = options.trunk_depth;
    } else {
      Fail(ErrorCode::kInvalidArgument,
           "cfrd needs a trunk depth or a list of trunk public states");
    }
    CfrdOptions cfrd;
    cfrd.iterations = options.iterations;
    cfrd.subgame_budget = options.subgame_budget;
    cfrd.parallel_leaves = options.parallel_leaves;
    cfrd.trace_stride = stride;
    cfrd.mode = options.mode;
    const CfrdResult r = CfrD(serial, rep, trunk, cfrd);
    for (const CfrdTracePoint& p : r.trace) {
      trace.Row(p.iteration, p.exploitability, p.value_p1, p.wall_ms);
    }
    result["iterations"] = options.iterations;
    result["game_value"] = ExpectedUtility(rep, r.completed)[0];
    result["exploitability"] = Exploitability(rep, r.completed);
    result["policy"] = PolicyJson(rep, r.completed);
    result["trunk_policy"] = PolicyJson(rep, r.trunk_average);
    json trunk_sets = json::array(), leaves = json::array();
    for (int s : trunk.public_sets) trunk_sets.push_back(rep.public_sets[s].key);
    for (int s : trunk.leaves) leaves.push_back(rep.public_sets[s].key);
    meta["trunk_public_states"] = trunk_sets;
    meta["leaf_public_states"] = leaves;
    meta["subgame_budget"] = options.subgame_budget;
    meta["chance_only_fallback"] = r.uniform_fallback;
  }
  result["metadata"] = meta;
  return {result, trace.str()};
}

json TimingCheck(const ClassicalEFG& efg) {
  ValidateEfg(efg);
  const TimingResult r = FindExactTiming(efg);
  json out;
  out["schema"] = 1;
  out["timeable"] = r.timeable;
  if (r.timeable) {
    out["timing"] = r.timing.labels;
    out["one_timeable"] = IsOneTimeable(efg);
  } else {
    json witness = json::array();
    for (const WitnessStep& step : r.witness) {
      witness.push_back({{"node", step.node},
                         {"name", efg.nodes[step.node].name},
                         {"next", step.infoset_link ? "infoset" : "child"}});
    }
    out["witness"] = witness;
    out["witness_valid"] = VerifyWitness(efg, r.witness);
  }
  return out;
}

PadOutput PadEfg(const ClassicalEFG& efg, const std::optional<Timing>& timing) {
  ValidateEfg(efg);
  Timing used;
  if (timing) {
    used = *timing;
  } else {
    const TimingResult r = FindExactTiming(efg);
    if (!r.timeable) {
      Fail(ErrorCode::kNotTimeable,
           "the EFG is not timeable; run 'timing check' for a witness cycle");
    }
    used = r.timing;
  }
  PadReport report;
  PadOutput out;
  out.padded = PadToOneTimeable(efg, used, &report);
  out.report = {{"schema", 1},
                {"original", report.original},
                {"added", report.added},
                {"padded", report.padded},
                {"bound", report.bound}};
  return out;
}

Timing TimingFromJson(const json& doc) {
  Timing t;
  try {
    if (doc.is_array()) {
      t.labels = doc.get<std::vector<int>>();
    } else if (doc.contains("labels")) {
      t.labels = doc.at("labels").get<std::vector<int>>();
    } else {
      t.labels = doc.at("timing").get<std::vector<int>>();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("bad timing file: ") + e.what());
  }
  return t;
}

std::string LpDumpForGame(const GameSpec& spec) {
  const ExtensiveFormRep rep = RepForGame(spec);
  RequireZeroSum(rep);
  return LpDump(rep, BuildSequenceLp(rep));
}

}  // namespace fosg
