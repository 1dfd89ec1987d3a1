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

// Acceptance checks. Prints one line per criterion and exits non-zero when
// any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fosg/cfr.h"
#include "fosg/commands.h"
#include "fosg/decomposition.h"
#include "fosg/domains.h"
#include "fosg/game_spec.h"
#include "fosg/sequence_form.h"
#include "fosg/status.h"
#include "fosg/timeability.h"
#include "fosg/unroller.h"
#include "support/oracles.h"

namespace {

using fosg::ExtensiveFormRep;
using fosg::TabularPolicy;

constexpr double kKuhnValue = -1.0 / 18.0;

int failures = 0;

void Report(int id, const std::string& title, bool ok, const std::string& detail) {
  std::printf("criterion %2d %-28s %s  %s\n", id, title.c_str(),
              ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

ExtensiveFormRep KuhnRep() {
  return fosg::Unroll(fosg::Serialize(fosg::KuhnPoker()));
}

// Exploitability from the enumerated best responses.
double OracleExploitability(const ExtensiveFormRep& rep,
                            const TabularPolicy& policy) {
  return 0.5 * (oracle::EnumeratedBestResponse(rep, policy, 0) +
                oracle::EnumeratedBestResponse(rep, policy, 1));
}

double MaxPolicyDiff(const TabularPolicy& a, const TabularPolicy& b) {
  double worst = 0.0;
  for (size_t p = 0; p < a.size(); ++p) {
    for (size_t s = 0; s < a[p].size(); ++s) {
      if (a[p][s].size() != b[p][s].size()) return INFINITY;
      for (size_t k = 0; k < a[p][s].size(); ++k) {
        worst = std::max(worst, std::fabs(a[p][s][k] - b[p][s][k]));
      }
    }
  }
  return worst;
}

double LpValue(const ExtensiveFormRep& rep) {
  return fosg::SolveZeroSumLp(fosg::BuildSequenceLp(rep)).value;
}

void Criterion1() {
  const ExtensiveFormRep rep = KuhnRep();
  const auto start = std::chrono::steady_clock::now();
  fosg::CfrSolver solver(rep);
  solver.Run(10000);
  const TabularPolicy avg = solver.AveragePolicy();
  const double expl = fosg::Exploitability(rep, avg);
  const double seconds = Seconds(start);
  const double oracle_expl = OracleExploitability(rep, avg);
  const double value = oracle::TreeUtility(rep, avg)[0];
  const double lp = LpValue(rep);
  // The same run through the command-line code path.
  fosg::SolveOptions options;
  options.iterations = 10000;
  const auto cli_start = std::chrono::steady_clock::now();
  const nlohmann::json result =
      fosg::SolveGame(fosg::LoadGame("kuhn"), options).result;
  const double cli_seconds = Seconds(cli_start);
  const double cli_expl = result.at("exploitability").get<double>();
  const bool ok = expl <= 0.01 && std::fabs(oracle_expl - expl) < 1e-9 &&
                  seconds < 10.0 && std::fabs(value - lp) <= 1e-2 &&
                  cli_expl <= 0.01 && cli_seconds < 10.0;
  Report(1, "kuhn cfr convergence", ok,
         Fmt("expl=%.6f time=%.2fs", expl, seconds) +
             Fmt(" solve=%.6f/%.2fs", cli_expl, cli_seconds) +
             Fmt(" value=%.6f lp=%.6f", value, lp));
}

void Criterion2() {
  const ExtensiveFormRep rep = KuhnRep();
  bool observable = true;
  for (int p = 0; p < rep.num_players; ++p) {
    for (const fosg::Infoset& info : rep.infosets[p]) {
      for (int h : info.nodes) {
        if (rep.nodes[h].cumulative_reward[p] !=
            rep.nodes[info.nodes.front()].cumulative_reward[p]) {
          observable = false;
        }
      }
    }
  }
  fosg::CfrOptions options;
  options.record_policies = true;
  fosg::CfrSolver solver(rep, options);
  solver.Run(100);
  const fosg::ClassicalEFG efg = fosg::ForgetNonActing(rep);
  const auto classical = fosg::ClassicalCfrPolicies(efg, 100);
  const auto index = efg.InfosetIndex();
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    for (int p = 0; p < rep.num_players; ++p) {
      for (size_t s = 0; s < rep.infosets[p].size(); ++s) {
        const fosg::Infoset& info = rep.infosets[p][s];
        if (!info.acting) continue;
        const auto [q, c] = index[info.nodes.front()];
        const auto& a = solver.policy_history()[t][p][s];
        const auto& b = classical[t][q][c];
        for (size_t k = 0; k < a.size(); ++k) {
          worst = std::max(worst, std::fabs(a[k] - b[k]));
        }
      }
    }
  }
  Report(2, "future-reward cfr", observable && worst <= 1e-12,
         std::string("observable=") + (observable ? "yes" : "no") +
             Fmt(" maxdiff=%.3g", worst));
}

void Criterion3() {
  const ExtensiveFormRep rep = KuhnRep();
  const fosg::SequenceLp lp = fosg::BuildSequenceLp(rep);
  const fosg::LpSolution sol = fosg::SolveZeroSumLp(lp);
  const TabularPolicy profile = fosg::ProfileFromPlans(rep, lp, sol.x, sol.y);
  const double lp_expl = OracleExploitability(rep, profile);
  fosg::CfrSolver solver(rep);
  solver.Run(100000);
  const double cfr_value = oracle::TreeUtility(rep, solver.AveragePolicy())[0];
  const ExtensiveFormRep mp = fosg::Unroll(fosg::Serialize(fosg::MatchingPennies()));
  const double mp_value = LpValue(mp);
  const bool ok = std::fabs(sol.value - cfr_value) <= 1e-4 &&
                  std::fabs(sol.value - kKuhnValue) <= 1e-9 &&
                  lp_expl <= 1e-6 && std::fabs(mp_value) <= 1e-9;
  Report(3, "lp vs cfr", ok,
         Fmt("lp=%.9f cfr=%.9f expl=%.2g", sol.value, cfr_value, lp_expl) +
             Fmt(" mp=%.2g", mp_value));
}

void Criterion4() {
  const ExtensiveFormRep rep = KuhnRep();
  fosg::CfrSolver solver(rep);
  std::vector<double> scaled;
  for (int t : {100, 1000, 10000}) {
    solver.Run(t - solver.iteration());
    scaled.push_back(fosg::Exploitability(rep, solver.AveragePolicy()) *
                     std::sqrt(static_cast<double>(t)));
  }
  bool ok = true;
  for (size_t k = 1; k < scaled.size(); ++k) {
    if (scaled[k] > 1.2 * scaled[k - 1]) ok = false;
  }
  Report(4, "convergence rate", ok,
         Fmt("expl*sqrt(T): %.4f %.4f %.4f", scaled[0], scaled[1], scaled[2]));
}

void Criterion5() {
  const fosg::GameSpec spec = fosg::Serialize(fosg::KuhnPoker());
  const ExtensiveFormRep rep = fosg::Unroll(spec);
  fosg::CfrdOptions options;
  options.iterations = 1000;
  options.subgame_budget = 1000;
  options.parallel_leaves = true;
  const auto start = std::chrono::steady_clock::now();
  const fosg::CfrdResult result =
      fosg::CfrD(spec, rep, fosg::TrunkByDepth(rep, 2), options);
  const double seconds = Seconds(start);
  const double expl = OracleExploitability(rep, result.completed);

  fosg::CfrdOptions whole;
  whole.iterations = 200;
  const fosg::CfrdResult full =
      fosg::CfrD(spec, rep, fosg::TrunkByDepth(rep, 1 << 20), whole);
  fosg::CfrOptions cfr_options;
  cfr_options.record_policies = true;
  fosg::CfrSolver solver(rep, cfr_options);
  solver.Run(200);
  double worst = full.trunk_history.size() == 200 ? 0.0 : INFINITY;
  for (size_t t = 0; t < full.trunk_history.size() && t < 200; ++t) {
    worst = std::max(worst, MaxPolicyDiff(full.trunk_history[t],
                                          solver.policy_history()[t]));
  }
  Report(5, "cfr-d", expl <= 0.05 && worst <= 1e-12,
         Fmt("expl=%.5f time=%.1fs whole-trunk maxdiff=%.3g", expl, seconds,
             worst));
}

// Sum over edges of the timing gap minus one.
long long TimingSlack(const fosg::ClassicalEFG& efg, const fosg::Timing& timing) {
  long long total = 0;
  for (const fosg::EfgNode& n : efg.nodes) {
    if (n.parent >= 0) total += timing.labels[n.id] - timing.labels[n.parent] - 1;
  }
  return total;
}

bool WitnessHolds(const fosg::ClassicalEFG& efg,
                  const std::vector<fosg::WitnessStep>& witness) {
  if (witness.size() < 2) return false;
  const auto index = efg.InfosetIndex();
  bool has_edge = false;
  for (size_t k = 0; k < witness.size(); ++k) {
    const int a = witness[k].node;
    const int b = witness[(k + 1) % witness.size()].node;
    if (witness[k].infoset_link) {
      if (index[a].first < 0 || index[a] != index[b]) return false;
    } else {
      if (efg.nodes[b].parent != a) return false;
      has_edge = true;
    }
  }
  return has_edge;
}

void Criterion6() {
  bool ok = true;
  std::string detail;
  const fosg::ClassicalEFG fixture = fosg::NontimeableFixture();
  const fosg::TimingResult fixed = fosg::FindExactTiming(fixture);
  const bool witness_ok = !fixed.timeable && WitnessHolds(fixture, fixed.witness) &&
                          fosg::VerifyWitness(fixture, fixed.witness);
  ok = ok && witness_ok;
  detail += std::string("witness=") + (witness_ok ? "ok" : "bad");
  bool chain_ok = true;
  for (int n = 2; n <= 8; ++n) {
    const fosg::PaddingChain chain = fosg::MakePaddingChain(n);
    fosg::PadReport report;
    const fosg::ClassicalEFG padded =
        fosg::PadToOneTimeable(chain.efg, chain.timing, &report);
    const long long h = static_cast<long long>(chain.efg.nodes.size());
    const long long expect = h + TimingSlack(chain.efg, chain.timing);
    if (static_cast<long long>(padded.nodes.size()) != expect ||
        report.padded != expect || expect > h * h ||
        !fosg::IsOneTimeable(padded)) {
      chain_ok = false;
    }
  }
  ok = ok && chain_ok;
  detail += std::string(" chains=") + (chain_ok ? "ok" : "bad");
  int within = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    const fosg::ClassicalEFG efg = fosg::RandomTimeableEfg(seed);
    const fosg::TimingResult timing = fosg::FindExactTiming(efg);
    if (!timing.timeable) continue;
    const fosg::ClassicalEFG padded = fosg::PadToOneTimeable(efg, timing.timing);
    const long long h = static_cast<long long>(efg.nodes.size());
    if (static_cast<long long>(padded.nodes.size()) ==
            h + TimingSlack(efg, timing.timing) &&
        static_cast<long long>(padded.nodes.size()) <= h * h) {
      ++within;
    }
  }
  ok = ok && within == 100;
  detail += " random=" + std::to_string(within) + "/100";
  Report(6, "timeability", ok, detail);
}

// Brute-force closure check.
bool Closed(const ExtensiveFormRep& rep, const std::vector<int>& histories) {
  std::set<int> inside(histories.begin(), histories.end());
  for (int p = 0; p < rep.num_players; ++p) {
    for (const fosg::Infoset& info : rep.infosets[p]) {
      size_t count = 0;
      for (int h : info.nodes) count += inside.count(h);
      if (count != 0 && count != info.nodes.size()) return false;
    }
  }
  return true;
}

fosg::RandomFosgParams RandomParams(uint64_t seed) {
  fosg::RandomFosgParams params;
  params.depth = 2 + static_cast<int>(seed % 5);
  params.serial = seed % 2 == 0;
  params.chance_actor = seed % 3 == 0;
  params.width = 2 + static_cast<int>(seed % 2);
  return params;
}

void Criterion7() {
  int agree = 0;
  long anchors = 0;
  int max_depth = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const fosg::GameSpec spec = fosg::RandomFosg(seed, RandomParams(seed));
    const ExtensiveFormRep rep = fosg::Unroll(fosg::Serialize(spec));
    bool same = true;
    for (const fosg::HistoryNode& h : rep.nodes) {
      max_depth = std::max(max_depth, h.depth);
      const auto closure = fosg::SubgameHistories(rep, h.id, fosg::SubgameMethod::kClosure);
      std::vector<int> brute = oracle::HistoriesBelowPublicKey(
          rep, rep.public_sets[h.public_set].key);
      std::sort(brute.begin(), brute.end());
      for (auto method : {fosg::SubgameMethod::kExtension,
                          fosg::SubgameMethod::kInfostate,
                          fosg::SubgameMethod::kPublic}) {
        if (fosg::SubgameHistories(rep, h.id, method) != closure) same = false;
      }
      if (closure != brute || !Closed(rep, closure)) same = false;
      ++anchors;
    }
    agree += same;
  }
  Report(7, "subgame definitions", agree == 50,
         std::to_string(agree) + "/50 games, " + std::to_string(anchors) +
             " anchors");
}

// Own-history of `player` at every node: the chain of own infosets and
// actions taken there.
bool OraclePerfectRecall(const ExtensiveFormRep& rep) {
  for (int p = 0; p < rep.num_players; ++p) {
    std::vector<std::vector<int>> own(rep.nodes.size());
    for (int h : rep.order) {
      const fosg::HistoryNode& n = rep.nodes[h];
      if (n.parent < 0) continue;
      const fosg::HistoryNode& parent = rep.nodes[n.parent];
      own[h] = own[n.parent];
      own[h].push_back(parent.infoset[p]);
      int action = -1;
      if (parent.actor == p) {
        for (size_t a = 0; a < parent.children.size(); ++a) {
          if (parent.children[a] == h) action = static_cast<int>(a);
        }
      }
      own[h].push_back(action);
    }
    for (const fosg::Infoset& info : rep.infosets[p]) {
      for (int h : info.nodes) {
        if (own[h] != own[info.nodes.front()]) return false;
      }
    }
  }
  return true;
}

bool OracleNoThickSets(const ExtensiveFormRep& rep) {
  for (const fosg::HistoryNode& n : rep.nodes) {
    for (int a = n.parent; a >= 0; a = rep.nodes[a].parent) {
      if (rep.nodes[a].public_set == n.public_set) return false;
    }
  }
  return true;
}

void Criterion8() {
  int good = 0;
  std::string first_reason;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const fosg::GameSpec spec = fosg::RandomFosg(seed, RandomParams(seed));
    const ExtensiveFormRep rep = fosg::Unroll(fosg::Serialize(spec));
    const bool recall = fosg::CheckPerfectRecall(rep).perfect_recall &&
                        OraclePerfectRecall(rep);
    const bool thin = !fosg::CheckThickPublicSets(rep).thick &&
                      OracleNoThickSets(rep);
    const ExtensiveFormRep again = fosg::Unroll(fosg::LiftToFosg(rep));
    const fosg::IsoResult iso = fosg::CheckIsomorphic(rep, again);
    if (recall && thin && iso.isomorphic) {
      ++good;
    } else if (first_reason.empty()) {
      first_reason = " seed " + std::to_string(seed) + ": " + iso.reason;
    }
  }
  Report(8, "unrolled structure", good == 50,
         std::to_string(good) + "/50" + first_reason);
}

bool OracleExactTiming(const fosg::ClassicalEFG& efg, const std::vector<int>& t) {
  for (const fosg::EfgNode& n : efg.nodes) {
    if (n.parent >= 0 && t[n.id] <= t[n.parent]) return false;
  }
  for (const auto& sets : efg.infosets) {
    for (const auto& set : sets) {
      for (int h : set) {
        if (t[h] != t[set.front()]) return false;
      }
    }
  }
  return true;
}

void Criterion9() {
  int good = 0;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const fosg::ClassicalEFG efg = fosg::RandomOneTimeableEfg(seed);
    const ExtensiveFormRep aug = fosg::AugmentClassical(efg);
    const fosg::ClassicalEFG back = fosg::ForgetNonActing(aug);
    const std::vector<int> depth = fosg::PublicSetTiming(aug);
    bool timing_ok = OracleExactTiming(back, depth);
    try {
      fosg::ValidateTiming(back, fosg::Timing{depth});
    } catch (const fosg::FosgError&) {
      timing_ok = false;
    }
    if (back == efg && timing_ok) ++good;
  }
  Report(9, "augment round trip", good == 50, std::to_string(good) + "/50");
}

double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double worst = 0.0;
  for (size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::fabs(a[k] - b[k]));
  return worst;
}

void Criterion10() {
  constexpr int kPolicies = 100;
  std::map<std::string, double> worst;

  // Serialization on simultaneous-move games.
  for (uint64_t seed = 0; seed < 5; ++seed) {
    fosg::RandomFosgParams params;
    params.serial = false;
    const fosg::GameSpec spec = fosg::RandomFosg(100 + seed, params);
    const ExtensiveFormRep rep = fosg::Unroll(fosg::Serialize(spec));
    for (int k = 0; k < kPolicies; ++k) {
      const oracle::PolicyFn policy = oracle::HashPolicy(k);
      const auto direct = oracle::DirectExpectedUtility(spec, policy);
      const auto tree =
          oracle::TreeUtility(rep, oracle::TabulateOverKeys(rep, policy));
      worst["serialize"] = std::max(worst["serialize"], MaxAbsDiff(direct, tree));
    }
  }

  // Chance merging.
  {
    const fosg::GameSpec spec = fosg::KuhnExplicitChance();
    const fosg::GameSpec merged = fosg::MergeChance(spec);
    const ExtensiveFormRep rep = fosg::Unroll(fosg::Serialize(merged));
    for (int k = 0; k < kPolicies; ++k) {
      const oracle::PolicyFn policy = oracle::HashPolicy(k);
      const auto direct = oracle::DirectExpectedUtility(spec, policy);
      const auto tree =
          oracle::TreeUtility(rep, oracle::TabulateOverKeys(rep, policy));
      const auto flat = oracle::DirectExpectedUtility(merged, policy);
      worst["merge_chance"] = std::max(
          {worst["merge_chance"], MaxAbsDiff(direct, tree), MaxAbsDiff(direct, flat)});
    }
  }

  // Forgetting the factorization.
  {
    std::vector<fosg::GameSpec> games = {fosg::KuhnPoker()};
    for (uint64_t seed = 0; seed < 3; ++seed) games.push_back(fosg::RandomFosg(200 + seed));
    for (const fosg::GameSpec& spec : games) {
      const fosg::GameSpec flat = fosg::ForgetFactorization(spec);
      const ExtensiveFormRep rep = fosg::Unroll(fosg::Serialize(flat));
      for (int k = 0; k < kPolicies; ++k) {
        const oracle::PolicyFn policy = oracle::HashPolicy(k);
        const auto direct = oracle::DirectExpectedUtility(spec, policy);
        const auto tree =
            oracle::TreeUtility(rep, oracle::TabulateOverKeys(rep, policy));
        worst["forget_factorization"] =
            std::max(worst["forget_factorization"], MaxAbsDiff(direct, tree));
      }
    }
  }

  // Subgame rooted at the trivial belief state.
  {
    const fosg::GameSpec spec = fosg::Serialize(fosg::KuhnPoker());
    const ExtensiveFormRep rep = fosg::Unroll(spec);
    const std::string root_key = rep.public_sets[rep.nodes[rep.Root()].public_set].key;
    fosg::PublicBeliefState pbs{root_key,
                                fosg::RangeAt(rep, fosg::UniformPolicy(rep), root_key)};
    const fosg::GameSpec sub = fosg::BuildSubgame(spec, rep, pbs);
    const ExtensiveFormRep sub_rep = fosg::Unroll(fosg::Serialize(sub));
    oracle::KeyRules expand;
    expand.expand_sampling = true;
    for (int k = 0; k < kPolicies; ++k) {
      const oracle::PolicyFn policy = oracle::HashPolicy(k);
      const auto full = oracle::TreeUtility(rep, oracle::TabulateOverKeys(rep, policy));
      const auto direct = oracle::DirectExpectedUtility(sub, policy, expand);
      const auto tree = oracle::TreeUtility(
          sub_rep, oracle::TabulateOverKeys(sub_rep, policy, expand));
      worst["trivial_pbs"] = std::max(
          {worst["trivial_pbs"], MaxAbsDiff(full, direct), MaxAbsDiff(full, tree)});
    }
  }

  // Padding.
  {
    std::vector<std::pair<fosg::ClassicalEFG, fosg::Timing>> cases;
    for (int n = 2; n <= 5; ++n) {
      fosg::PaddingChain chain = fosg::MakePaddingChain(n);
      cases.emplace_back(chain.efg, chain.timing);
    }
    for (uint64_t seed = 0; seed < 5; ++seed) {
      const fosg::ClassicalEFG efg = fosg::RandomTimeableEfg(seed);
      const fosg::TimingResult t = fosg::FindExactTiming(efg);
      if (t.timeable) cases.emplace_back(efg, t.timing);
    }
    for (const auto& [efg, timing] : cases) {
      const fosg::ClassicalEFG padded = fosg::PadToOneTimeable(efg, timing);
      const auto index = efg.InfosetIndex();
      for (int k = 0; k < kPolicies; ++k) {
        const oracle::PolicyFn hashed = oracle::HashPolicy(k);
        auto original = [&](int p, int s, int actions) {
          return hashed(p, std::to_string(efg.infosets[p][s].front()), actions);
        };
        auto moved = [&](int p, int s, int actions) {
          const int first = padded.infosets[p][s].front();
          return hashed(p, std::to_string(first), actions);
        };
        worst["padding"] = std::max(
            worst["padding"], MaxAbsDiff(oracle::EfgUtility(efg, original),
                                         oracle::EfgUtility(padded, moved)));
      }
    }
  }

  bool ok = worst.size() == 5;
  std::string detail;
  for (const auto& [name, value] : worst) {
    ok = ok && value <= 1e-12;
    detail += name + Fmt("=%.2g ", value);
  }
  Report(10, "strategic equivalence", ok, detail);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      Criterion1, Criterion2, Criterion3, Criterion4,  Criterion5,
      Criterion6, Criterion7, Criterion8, Criterion9, Criterion10};
  for (size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      Report(static_cast<int>(k + 1), "exception", false, e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
